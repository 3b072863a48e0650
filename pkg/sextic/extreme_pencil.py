"""
SexticLab – Extremer Bleistift
==============================
Zu einer zulässigen Menge S mit Kubik f und normiertem Erzeuger q:

- lokale Schwellen t(P) aus den quadratischen Daten an P ∈ S
- Ausnahmemenge: alle reellen t, für die q_t = q + t·f² eine zusätzliche
  Singularität, eine höhere Singularität in S oder eine mehrfache
  Komponente hat
- s = größtes Element, q_S = q + s·f², zehnte Nullstelle oder A3-Punkt
- exakte psd-Entscheidung für rationale Sextiken (Zylinderstichprobe)

Die Ausnahmewerte kommen aus dem t-freien Entartungsort
rang[∇q; ∇f] <= 1: an einem solchen Punkt p ∉ V(f) ist p singulär auf
q_t mit t = −q(p)/f(p)² (Euler).
"""

from __future__ import annotations

import logging
import random
from typing import Optional, Sequence, Union

from sympy import Poly, QQ, Rational, symbols

from sextic import config
from sextic.cubic_analysis import (
    U,
    V,
    local_chart,
    local_quadratic_data,
    merge_breakpoints,
    threshold_from_local_data,
)
from sextic.elimination import (
    affine_chart,
    eliminate_y,
    leading_y_constant,
    solve_forms,
)
from sextic.errors import (
    InconsistencyError,
    InvalidInputError,
    RetryExhaustedError,
    UnsupportedCaseError,
)
from sextic.exact_arith import (
    RATIONAL_FIELD,
    FieldElement,
    RealAlgebraicNumber,
    isolate_real_roots,
    sample_points,
    unipoly,
)
from sextic.interpolation import in_span, vanishing
from sextic.models import (
    A3Analysis,
    CandidateSource,
    ExceptionalCandidate,
    ExtremePencilResult,
    OutcomeKind,
    PsdVerdict,
    SampleCertificate,
    ThresholdEntry,
)
from sextic.seeding import make_rng
from sextic.ternary_forms import (
    GENS,
    Point,
    ProjectivePoint,
    TernaryForm,
    apply_projectivity,
    as_form,
    as_point,
    evaluate,
    form_gcd,
    map_point,
    partials,
    random_projectivity,
    substitute_linear,
    vanishes_at,
)

logger = logging.getLogger(__name__)

x0, x1, x2 = GENS


# ---------------------------------------------------------------------------
# Lokale Schwellen
# ---------------------------------------------------------------------------

def local_threshold(f, q, P) -> Rational:
    """
    t(P) = b²/(4c) − a aus den lokalen Daten von q an P.

    Raises:
        InconsistencyError: c <= 0 (q nicht korrekt vorzeichennormiert)
    """
    data = local_quadratic_data(f, q, P)
    if data.c <= 0:
        raise InconsistencyError(f"c = {data.c} <= 0 an {data.point}, q ist nicht normiert")
    return threshold_from_local_data(data.a, data.b, data.c)


def local_thresholds(f: TernaryForm, q: TernaryForm, S: Sequence[ProjectivePoint]) -> list[ThresholdEntry]:
    return [ThresholdEntry(point=P, value=local_threshold(f, q, P)) for P in S]


def local_psd_bump(f, g, P) -> Rational:
    """
    Kleinstes t = 2^k (k >= 0), für das g + t·f² in P eine positiv
    definite lokale Hesse-Form hat.

    Raises:
        InvalidInputError: c <= 0, dann hilft kein Vielfaches von f²
    """
    data = local_quadratic_data(f, g, P)
    if data.c <= 0:
        raise InvalidInputError(f"Quadratischer Teil in V-Richtung nicht positiv an {data.point}")
    bound = data.b ** 2 / (4 * data.c)
    t = Rational(1)
    while not data.a + t > bound:
        t *= 2
    return t


# ---------------------------------------------------------------------------
# Ausnahmemenge
# ---------------------------------------------------------------------------

def degeneracy_minors(f: TernaryForm, q: TernaryForm) -> list[TernaryForm]:
    """Die drei 2x2-Minoren von [∇q; ∇f], Grad deg q + deg f − 2."""
    dq, df = partials(q), partials(f)
    degree = q.degree + f.degree - 2
    minors = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        m = dq[i] * df[j] - dq[j] * df[i]
        minors.append(TernaryForm(m.poly, degree))
    return minors


def _component_value(
    f: TernaryForm,
    q: TernaryForm,
    h: TernaryForm,
    rng: random.Random,
) -> Optional[Rational]:
    """t0 mit h | q + t0·f², gelesen auf einer zufälligen Geraden; None falls keiner."""
    square = f ** 2
    if h.divides(square):
        return None
    lam = symbols("lam")
    for _ in range(config.MAX_RETRIES):
        A = [rng.randint(-9, 9) for _ in range(3)]
        B = [rng.randint(-9, 9) for _ in range(3)]
        images = [Poly(A[i] * lam + B[i], lam, domain=QQ) for i in range(3)]
        hl = substitute_linear(h.poly, images, (lam,))
        if hl.degree() != h.degree:
            continue
        q_rem = substitute_linear(q.poly, images, (lam,)).rem(hl)
        s_rem = substitute_linear(square.poly, images, (lam,)).rem(hl)
        if s_rem.is_zero:
            continue
        t0 = -q_rem.LC() / s_rem.LC()
        if (q + square * t0).exquo(h) is not None:
            return Rational(t0)
        return None
    raise RetryExhaustedError("Keine geeignete Gerade für die Komponentenprüfung")


def exceptional_candidates(
    f: TernaryForm,
    q: TernaryForm,
    S: Sequence[ProjectivePoint],
    rng: random.Random,
    thresholds: Optional[list[ThresholdEntry]] = None,
) -> list[ExceptionalCandidate]:
    """
    Alle reellen Kandidaten der Ausnahmemenge mit Herkunft.

    Raises:
        RetryExhaustedError: aus dem Löser
    """
    if thresholds is None:
        thresholds = local_thresholds(f, q, S)
    candidates = [
        ExceptionalCandidate(
            value=RealAlgebraicNumber.from_rational(entry.value),
            exact=RATIONAL_FIELD.element(entry.value),
            source=CandidateSource.LOCAL_THRESHOLD,
            point=entry.point,
        )
        for entry in thresholds
    ]

    minors = degeneracy_minors(f, q)
    nonzero = [m for m in minors if not m.is_zero]
    common = nonzero[0]
    for m in nonzero[1:]:
        common = form_gcd(common, m)
    if common.degree > 0:
        _, factors = common.poly.factor_list()
        for factor, _ in factors:
            h = TernaryForm.from_poly(factor).canonical()
            t0 = _component_value(f, q, h, rng)
            if t0 is not None:
                logger.info(f"⚠️ q_t hat für t = {t0} die mehrfache Komponente {h}")
                candidates.append(ExceptionalCandidate(
                    value=RealAlgebraicNumber.from_rational(t0),
                    exact=RATIONAL_FIELD.element(t0),
                    source=CandidateSource.MULTIPLE_COMPONENT,
                ))
        nonzero = [m.exquo(common) for m in nonzero]

    solved = solve_forms(nonzero, rng, real_only=True)
    for p in solved.real_points:
        fp = evaluate(f, p)
        if fp == 0:
            continue
        t = -evaluate(q, p) / (fp * fp)
        exact = t if isinstance(t, FieldElement) else RATIONAL_FIELD.element(t)
        candidates.append(ExceptionalCandidate(
            value=exact.to_real(),
            exact=exact,
            source=CandidateSource.SINGULAR_POINT,
            point=p,
        ))
    logger.info(f"📊 {len(candidates)} reelle Ausnahmekandidaten ({len(solved.real_points)} Entartungspunkte)")
    return candidates


def exceptional_set(f, q, S, rng: Optional[random.Random] = None) -> list[RealAlgebraicNumber]:
    """Reelle Elemente der Ausnahmemenge, aufsteigend und ohne Duplikate."""
    f, q = as_form(f), as_form(q)
    S = [as_point(P) for P in S]
    rng = rng or make_rng("exceptional", f, q, S)
    return merge_breakpoints(c.value for c in exceptional_candidates(f, q, S, rng))


# ---------------------------------------------------------------------------
# A3-Analyse
# ---------------------------------------------------------------------------

def a3_analysis(f, q, s, P) -> A3Analysis:
    """
    Quartischer Jet von q_s = q + s·f² an P mit ausgeartetem quadratischem Teil.

    Nach m = V + b/(2c)·U, n = U ist der quadratische Teil c·m²; ein A3-Punkt
    mit konjugierten Zweigen hat keinen n³-Term und d − c1²/(4c) > 0.

    Raises:
        InvalidInputError: quadratischer Teil nicht ausgeartet oder c <= 0
    """
    f, q, P = as_form(f), as_form(q), as_point(P)
    s = Rational(s)
    q_s = q + f ** 2 * s
    chart = local_chart(f, P, [q_s])
    Q = chart.others[0]
    a, b, c = (Rational(Q.coeff_monomial(m)) for m in (U ** 2, U * V, V ** 2))
    if c <= 0:
        raise InvalidInputError(f"c = {c} <= 0 an {P}")
    if b ** 2 - 4 * a * c != 0:
        raise InvalidInputError(f"Quadratischer Teil von q_s an {P} ist nicht ausgeartet")
    m, n = symbols("m n")
    images = [Poly(n, m, n, domain=QQ), Poly(m - b / (2 * c) * n, m, n, domain=QQ)]
    jet = substitute_linear(Q, images, (m, n))
    cubic = Rational(jet.coeff_monomial(n ** 3))
    mixed = Rational(jet.coeff_monomial(m * n ** 2))
    quartic = Rational(jet.coeff_monomial(n ** 4))
    invariant = quartic - mixed ** 2 / (4 * c)
    return A3Analysis(
        point=P,
        cubic_coefficient=cubic,
        mixed_coefficient=mixed,
        quartic_coefficient=quartic,
        invariant=invariant,
        conjugate_branches=bool(cubic == 0 and invariant > 0),
    )


# ---------------------------------------------------------------------------
# psd-Entscheidung
# ---------------------------------------------------------------------------

def verify_psd(g, known_zeros: Sequence = (), rng: Optional[random.Random] = None) -> PsdVerdict:
    """
    Exakte Entscheidung g >= 0 auf P²(R).

    Karte z = 1 nach generischer Projektivität; Bruchstellen aus der
    Diskriminante des Radikals r von g, rationale Stichprobe in jeder
    offenen Zelle. g ist psd genau dann, wenn keine Stichprobe negativ ist.

    Raises:
        InvalidInputError: g ist die Nullform
    """
    g = as_form(g)
    if g.is_zero:
        raise InvalidInputError("psd-Test für die Nullform ist nicht definiert")
    zeros = [as_point(p) for p in known_zeros]
    zeros_confirmed = all(vanishes_at(g, p) for p in zeros) if zeros else None
    if g.degree % 2 == 1:
        return PsdVerdict(psd=False, zeros_confirmed=zeros_confirmed)
    if g.degree == 0:
        return PsdVerdict(psd=bool(g.coefficient((0, 0, 0)) > 0), zeros_confirmed=zeros_confirmed)
    rng = rng or make_rng("verify-psd", g)
    radical = g.poly.sqf_part()
    r = TernaryForm.from_poly(radical, radical.total_degree())

    for attempt in range(1, config.MAX_RETRIES + 1):
        T = random_projectivity(rng, attempt)
        R = apply_projectivity(r, T)
        if not leading_y_constant(R):
            continue
        chart_r = affine_chart(R)
        chart_g = affine_chart(apply_projectivity(g, T))
        discriminant = eliminate_y(chart_r, chart_r.diff(x1))
        if discriminant.is_zero:
            continue
        for xs in sample_points(isolate_real_roots(discriminant)):
            fiber_r = unipoly(chart_r.eval(x0, xs))
            fiber_g = unipoly(chart_g.eval(x0, xs))
            for ys in sample_points(isolate_real_roots(fiber_r)):
                if fiber_g.eval(ys) < 0:
                    witness = map_point(T, ProjectivePoint.of(xs, ys, 1))
                    value = evaluate(g, witness)
                    logger.debug(f"🔍 Negativer Wert {value} an {witness}")
                    return PsdVerdict(
                        psd=False,
                        witness=witness,
                        witness_value=value,
                        zeros_confirmed=zeros_confirmed,
                    )
        return PsdVerdict(psd=True, zeros_confirmed=zeros_confirmed)
    raise RetryExhaustedError("Keine generische Karte für den psd-Test")


# ---------------------------------------------------------------------------
# Extreme Sextik
# ---------------------------------------------------------------------------

def singular_on_pencil(f: TernaryForm, q: TernaryForm, t, p: Point) -> bool:
    """∇q + 2t·f·∇f verschwindet in p (t rational oder im Körper von p)."""
    fp = evaluate(f, p)
    for dq, df in zip(partials(q), partials(f)):
        value = evaluate(dq, p) + evaluate(df, p) * fp * t * 2
        if not (value.is_zero if isinstance(value, FieldElement) else value == 0):
            return False
    return True


def _rational_above(s: RealAlgebraicNumber) -> Rational:
    if s.is_rational:
        return s.rational_value + Rational(1, 1000)
    return s.refine(Rational(1, 1000)).hi


def _rational_below(s: RealAlgebraicNumber) -> Rational:
    if s.is_rational:
        return s.rational_value - Rational(1, 1000)
    return s.refine(Rational(1, 1000)).lo


def verify_threshold(
    f: TernaryForm,
    q: TernaryForm,
    s: RealAlgebraicNumber,
    rng: random.Random,
) -> tuple[bool, bool]:
    """(q_t' psd für rationales t' > s, q_t'' nicht psd für rationales t'' < s)."""
    above = verify_psd(q + f ** 2 * _rational_above(s), rng=rng).psd
    below = not verify_psd(q + f ** 2 * _rational_below(s), rng=rng).psd
    if above and below:
        logger.info(f"✅ Schwelle s ≈ {s.approx(config.DISPLAY_PRECISION)} bestätigt")
    else:
        logger.warning(f"❌ Schwellenprüfung fehlgeschlagen: psd darüber={above}, indefinit darunter={below}")
    return above, below


def compute_extreme(
    f: TernaryForm,
    q: TernaryForm,
    S: Sequence[ProjectivePoint],
    rng: random.Random,
    thresholds: Optional[list[ThresholdEntry]] = None,
    candidates: Optional[list[ExceptionalCandidate]] = None,
    verify: Optional[bool] = None,
) -> ExtremePencilResult:
    """
    s als größter Ausnahmewert und Ergebnis von q_S.

    Raises:
        UnsupportedCaseError: s stammt nur von einer mehrfachen Komponente
        InconsistencyError: weder zehnte Nullstelle noch A3-Punkt
    """
    if thresholds is None:
        thresholds = local_thresholds(f, q, S)
    if candidates is None:
        candidates = exceptional_candidates(f, q, S, rng, thresholds)
    top = candidates[0]
    for c in candidates[1:]:
        if c.value.compare(top.value) > 0:
            top = c
    s = top.value
    tied = [c for c in candidates if c.value.compare(s) == 0]
    fields = dict(outcome=None, tenth_zero=None, extra_zeros=[], a3_point=None, a3=None, s_exact=top.exact)

    local = [c for c in tied if c.source is CandidateSource.LOCAL_THRESHOLD]
    if local:
        P = local[0].point
        value = local[0].value.rational_value
        a3 = a3_analysis(f, q, value, P)
        if a3.conjugate_branches:
            fields.update(outcome=OutcomeKind.A3, a3_point=P, a3=a3, s_exact=RATIONAL_FIELD.element(value))
            logger.info(f"✅ A3-Singularität von q_S an {P}")
    if fields["outcome"] is None:
        singular = [c for c in tied if c.source is CandidateSource.SINGULAR_POINT]
        if not singular:
            if any(c.source is CandidateSource.MULTIPLE_COMPONENT for c in tied):
                raise UnsupportedCaseError("q_S hätte eine mehrfache Komponente")
            raise InconsistencyError("Weder zehnte Nullstelle noch A3-Punkt bei t = s")
        zero = singular[0]
        if not singular_on_pencil(f, q, zero.exact, zero.point):
            raise InconsistencyError(f"Zehnte Nullstelle {zero.point} ist nicht singulär auf q_S")
        fields.update(
            outcome=OutcomeKind.TENTH_ZERO,
            tenth_zero=zero.point,
            extra_zeros=[c.point for c in singular[1:]],
            s_exact=zero.exact,
        )
        logger.info(f"✅ Zehnte Nullstelle von q_S: {zero.point}")

    verify = config.VERIFY_THRESHOLD if verify is None else verify
    above = below = None
    if verify:
        above, below = verify_threshold(f, q, s, rng)
    return ExtremePencilResult(
        f=f,
        q=q,
        local_thresholds=thresholds,
        exceptional_set=merge_breakpoints(c.value for c in candidates),
        candidates=candidates,
        s=s,
        verified_above=above,
        verified_below=below,
        **fields,
    )


def not_sos_certificate(S, form: Union[TernaryForm, ExtremePencilResult]) -> bool:
    """
    q_S ist keine Quadratsumme, falls I_3(S) eindimensional ist und q_S
    nicht in span(f²) liegt: jede Darstellung Σ q_i² hätte q_i ∈ I_3(S).
    """
    S = [as_point(P) for P in S]
    cubics = vanishing(S, 3)
    if cubics.dimension != 1:
        return False
    square = cubics.basis[0] ** 2
    if isinstance(form, ExtremePencilResult):
        # q + s·f² liegt genau dann in span(f²), wenn q es tut
        q_s = form.rational_form()
        form = q_s if q_s is not None else form.q
    return not in_span(as_form(form), [square])


def certify_nonnegative_samples(
    result: ExtremePencilResult,
    count: int = 10_000,
    seed: int = 0,
    spread: int = 20,
) -> SampleCertificate:
    """Wertet q + s⁻·f² (s⁻ <= s) an seeded rationalen Punkten aus; alle >= 0 zertifiziert q_S >= 0 dort."""
    s = result.s
    lower = s.rational_value if s.is_rational else s.refine(Rational(1, 10 ** 6)).lo
    bound = result.q + result.f ** 2 * lower
    rng = random.Random(seed)
    for i in range(count):
        coords = [rng.randint(-spread, spread) for _ in range(3)]
        if not any(coords):
            coords[2] = 1
        point = ProjectivePoint.of(*coords)
        if evaluate(bound, point) < 0:
            logger.warning(f"❌ Negativer Stichprobenwert an {point}")
            return SampleCertificate(passed=False, checked=i + 1, lower_bound=lower, failure=point)
    return SampleCertificate(passed=True, checked=count, lower_bound=lower)
