"""SexticLab – Extreme psd Sextiken zu neun Punkten in der reellen projektiven Ebene"""
