"""Certified recomputation of the displayed intermediates and the vanishing of c_7 and c_8."""

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Iterator, List, Literal, Mapping, Optional, Sequence, Tuple

from chernwall._typing import assert_unreachable
from chernwall.algebra.groebner import reduce_with_stats
from chernwall.algebra.parser import parse
from chernwall.algebra.poly import (
    AmbientMismatchError,
    DegreeMismatchError,
    GradedRing,
    Polynomial,
    Variable,
    format_coefficient,
)
from chernwall.algebra.presentation import RingPresentation
from chernwall.chern import ChernCalculus, RankShapeError
from chernwall.cohomology import (
    DEFAULT_TRUNCATION,
    CohomologyRings,
    NotAUnitError,
    PairModel,
    S2Class,
    load_rings,
    parse_display,
)
from chernwall.vanish.helpers import (
    TermDiff,
    evaluate_truncated,
    read_display,
    scalar_ratio,
    strip_comments,
    term_diff,
)

__all__ = [
    "COMPUTATION_ERRORS",
    "Certificate",
    "DISPLAY_NAMES",
    "KERNEL_AXIOM",
    "MU_MULTIPLIER",
    "Pipeline",
    "STAGES",
    "Stage",
    "TermDiff",
]

logger = logging.getLogger(__name__)

# Raised by malformed presentations or displays part way through a computation.
COMPUTATION_ERRORS = (AmbientMismatchError, DegreeMismatchError, NotAUnitError, RankShapeError)

Stage = Literal[
    "normal_bundle", "cF", "prod_minus_eta", "grr_expansion", "c7_display", "c8_display"
]
STAGES: Tuple[Stage, ...] = (
    "normal_bundle",
    "cF",
    "prod_minus_eta",
    "grr_expansion",
    "c7_display",
    "c8_display",
)

DISPLAY_NAMES = (
    "normal_bundle",
    "c_f",
    "prod_minus_eta",
    "grr_a",
    "grr_b",
    "grr_expansion",
    "c7",
    "c8",
    "chk7",
    "ch8van",
    "c8_residual",
)

MU_MULTIPLIER = 3
C7_DEGREE = 14
C8_DEGREE = 16
GRR_DEGREE = 14

KERNEL_AXIOM = (
    "assumed: the kernel of multiplication by xi on H*(S1) is H*(S0)*mu, "
    "so a class of H*(S1) killed by xi is c*mu in degree 16"
)

# Ring of the GRR display: the exceptional-divisor generators plus formal A and B.
GRR_RING = GradedRing(
    [
        Variable("eta", 2),
        Variable("u", 2),
        Variable("v", 2),
        Variable("a", 4),
        Variable("b", 6),
        Variable("A", 2),
        Variable("B", 2),
    ]
)


@dataclass(frozen=True)
class Certificate:
    """
    Outcome of one verification stage.

    Attributes
    ----
    stage       Stage name.
    claimed     The displayed expression, as text.
    computed    The recomputed expression in normal form, as text.
    match       True iff the computed normal form equals the claimed one.
    stats       Reduction step and term counts.
    elapsed_ms  Wall-clock time, or None when timings are off.
    sign        Global sign applied to the computed side (c7 only may be -1).
    notes       Free-form remarks; failed prerequisites and assumptions are listed here.
    diff        Offending monomials when match is False.
    values      Named results, e.g. the scalar c of the c8 argument.
    """

    stage: str
    claimed: str
    computed: str
    match: bool
    stats: Mapping[str, int] = field(default_factory=dict)
    elapsed_ms: Optional[float] = None
    sign: int = 1
    notes: Tuple[str, ...] = ()
    diff: Tuple[TermDiff, ...] = ()
    values: Mapping[str, str] = field(default_factory=dict)


class Pipeline:
    """
    Recomputes every displayed intermediate from the ring presentations and checks it.

    Parameters
    ----
    rings       Loaded presentations (bundled ones by default).
    truncation  Working degree, 16 by default; 14 suffices for c_7.
    timings     Record elapsed time in certificates. Off gives byte-identical runs.
    displays    Replacement display texts by name, for negative controls.
    """

    def __init__(
        self,
        rings: Optional[CohomologyRings] = None,
        *,
        truncation: int = DEFAULT_TRUNCATION,
        timings: bool = True,
        displays: Optional[Mapping[str, str]] = None,
    ) -> None:
        unknown = set(displays or {}) - set(DISPLAY_NAMES)
        if unknown:
            raise ValueError(f"unknown display names: {sorted(unknown)}")
        self._rings = rings if rings is not None else load_rings()
        self._model = PairModel(self._rings, truncation=truncation)
        self._chern = ChernCalculus(self._model)
        self._timings = timings
        self._display_overrides = dict(displays or {})
        self._stage_cache: Dict[str, Certificate] = {}

    @property
    def model(self) -> PairModel:
        return self._model

    @property
    def chern(self) -> ChernCalculus:
        return self._chern

    @property
    def truncation(self) -> int:
        return self._model.truncation

    def display_text(self, name: str) -> str:
        if name in self._display_overrides:
            return strip_comments(self._display_overrides[name])
        return read_display(name)

    def _parse_in(self, presentation: RingPresentation, name: str) -> Polynomial:
        return self._rings.parse(presentation, self.display_text(name))

    def _display_class(self, name: str) -> S2Class:
        return self._model.embed(parse_display(self.display_text(name)))

    # Intermediates, computed once and shared by the stages.

    @cached_property
    def normal_bundle(self) -> Polynomial:
        return self._chern.normal_bundle()

    @cached_property
    def c_f(self) -> Polynomial:
        return self._chern.c_f(self.normal_bundle)

    @cached_property
    def prod_minus_eta(self) -> Polynomial:
        return self._chern.prod_minus_eta(self.c_f)

    @cached_property
    def grr_excess(self) -> Polynomial:
        return self._chern.grr_excess(self.c_f)

    @cached_property
    def log_cotangent(self) -> S2Class:
        total = self._chern.log_cotangent_total(self.grr_excess)
        logger.info("assembled c(Omega_S2/S0(log D)) through degree %d", self.truncation)
        return total

    @cached_property
    def mu(self) -> Polynomial:
        """The S1 relation divided by xi."""
        s1 = self._rings.s1
        i = s1.ring.index("xi")
        relation = s1.relations[0]
        return s1.ring.from_terms(
            {m[:i] + (m[i] - 1,) + m[i + 1 :]: c for m, c in relation.terms()}
        )

    def warm_up(self) -> None:
        """Compute the shared intermediates, so concurrent stages only read them."""
        try:
            _ = self.log_cotangent
            _ = self.prod_minus_eta
        except COMPUTATION_ERRORS as error:
            logger.warning("warm-up stopped: %s", error)
        _ = self.mu

    @contextmanager
    def _clock(self) -> Iterator[Dict[str, Optional[float]]]:
        box: Dict[str, Optional[float]] = {"ms": None}
        start = time.perf_counter()
        yield box
        if self._timings:
            box["ms"] = round((time.perf_counter() - start) * 1000.0, 3)

    def _compare(
        self,
        stage: str,
        presentation: RingPresentation,
        claimed_text: str,
        claimed: Polynomial,
        computed: Polynomial,
        notes: Sequence[str] = (),
    ) -> Certificate:
        claimed_nf, claimed_stats = reduce_with_stats(claimed, presentation.basis)
        computed_nf, computed_stats = reduce_with_stats(computed, presentation.basis)
        match = claimed_nf == computed_nf
        return Certificate(
            stage=stage,
            claimed=claimed_text,
            computed=str(computed_nf),
            match=match,
            stats={
                "claimed_steps": claimed_stats.steps,
                "computed_steps": computed_stats.steps,
                "terms": len(computed_nf),
            },
            notes=tuple(notes),
            diff=() if match else tuple(term_diff(claimed_nf, computed_nf)),
        )

    def _compare_classes(
        self, stage: str, claimed_text: str, claimed: S2Class, computed: S2Class, sign: int
    ) -> Certificate:
        model = self._model
        left = model.canonical(claimed)
        right = model.canonical(computed.scale(sign))
        match = left.p == right.p and left.q == right.q
        diff: List[TermDiff] = []
        if not match:
            diff = term_diff(left.p, right.p, part="p") + term_diff(left.q, right.q, part="q")
        return Certificate(
            stage=stage,
            claimed=claimed_text,
            computed=str(right),
            match=match,
            stats={"p_terms": len(right.p), "q_terms": len(right.q)},
            sign=sign,
            diff=tuple(diff[:20]),
        )

    def verify_stage(self, stage: Stage) -> Certificate:
        if stage in self._stage_cache:
            return self._stage_cache[stage]
        logger.info("stage %s: start", stage)
        with self._clock() as clock:
            try:
                certificate = self._run_stage(stage)
            except COMPUTATION_ERRORS as error:
                certificate = self._broken(stage, error)
        certificate = replace(certificate, elapsed_ms=clock["ms"])
        logger.info("stage %s: %s", stage, "match" if certificate.match else "MISMATCH")
        self._stage_cache[stage] = certificate
        return certificate

    def _run_stage(self, stage: Stage) -> Certificate:
        rings = self._rings
        if stage == "normal_bundle":
            text = self.display_text("normal_bundle")
            return self._compare(
                stage, rings.b, text, self._parse_in(rings.b, "normal_bundle"), self.normal_bundle
            )
        elif stage == "cF":
            text = self.display_text("c_f")
            return self._compare(
                stage, rings.btilde, text, self._parse_in(rings.btilde, "c_f"), self.c_f
            )
        elif stage == "prod_minus_eta":
            text = self.display_text("prod_minus_eta")
            return self._compare(
                stage,
                rings.btilde,
                text,
                self._parse_in(rings.btilde, "prod_minus_eta"),
                self.prod_minus_eta,
            )
        elif stage == "grr_expansion":
            return self._grr_stage()
        elif stage == "c7_display":
            return self._display_stage(stage, "c7", C7_DEGREE, signs=(1, -1))
        elif stage == "c8_display":
            return self._display_stage(stage, "c8", C8_DEGREE, signs=(1,))
        else:
            assert_unreachable(stage)

    def _grr_stage(self) -> Certificate:
        bt = self._rings.btilde
        uv = bt.ring.gen("u") * bt.ring.gen("v")
        a = self._parse_in(bt, "grr_a")
        b = self._parse_in(bt, "grr_b")
        # D = 1 - prod(1+b_i-eta) and F = (prod(1+b_i-eta) - prod(1+b_i))/eta.
        d_computed = 1 - self.prod_minus_eta
        f_computed = self.prod_minus_eta - self.c_f
        eta = bt.ring.gen("eta")
        notes = []
        d_ok = bt.normal_form(d_computed - a - 3 * uv).is_zero
        f_ok = bt.normal_form(f_computed - eta * (b + 3 * uv)).is_zero
        notes.append(f"D = A + 3uv: {'ok' if d_ok else 'FAILED'}")
        notes.append(f"F = B + 3uv: {'ok' if f_ok else 'FAILED'}")

        text = self.display_text("grr_expansion")
        display = parse(text, GRR_RING)
        degree = min(GRR_DEGREE, self.truncation - 2)
        expanded = evaluate_truncated(display, {"A": a, "B": b}, bt.ring, degree)
        certificate = self._compare("grr_expansion", bt, text, expanded, self.grr_excess, notes)
        if d_ok and f_ok:
            return certificate
        return replace(certificate, match=False)

    def _display_stage(
        self, stage: str, name: str, degree: int, signs: Tuple[int, ...]
    ) -> Certificate:
        text = self.display_text(name)
        claimed = self._display_class(name)
        computed = self._chern.chern_class(self.log_cotangent, degree // 2)
        notes = []
        if not self._model.is_homogeneous(computed, degree):
            notes.append(f"computed class is not homogeneous of degree {degree}")
        if degree > self.truncation:
            notes.append(f"working degree {self.truncation} is below {degree}")
        certificate = None
        for sign in signs:
            certificate = self._compare_classes(stage, text, claimed, computed, sign)
            if certificate.match:
                break
        assert certificate is not None
        if notes:
            certificate = replace(certificate, match=False, notes=tuple(notes))
        return certificate

    def _prerequisites(self, exclude: str) -> List[str]:
        return [s for s in STAGES if s != exclude and not self.verify_stage(s).match]

    def _broken(self, stage: str, error: Exception) -> Certificate:
        logger.warning("stage %s: %s", stage, error)
        return Certificate(
            stage=stage,
            claimed="",
            computed="",
            match=False,
            notes=(f"computation failed: {error}",),
        )

    def verify_c7(self) -> Certificate:
        """c_7 = 0: rehousing leaves no pullback part and the pushforward part reduces to 0."""
        try:
            return self._verify_c7()
        except COMPUTATION_ERRORS as error:
            return self._broken("c7", error)

    def verify_c8(self) -> Certificate:
        """
        c_8 = 0: after rehousing, c_8 - 3*mu is a pushforward j_*(X) with X killed by eta and
        xi; the kernel of xi gives c_8 - 3*mu = c*mu and the fiber computation pins c = -3.
        """
        try:
            return self._verify_c8()
        except COMPUTATION_ERRORS as error:
            return self._broken("c8", error)

    def _verify_c7(self) -> Certificate:
        logger.info("verify c7: start")
        model = self._model
        bt = self._rings.btilde
        with self._clock() as clock:
            failed = self._prerequisites(exclude="c8_display")
            notes = [f"prerequisite stage failed: {s}" for s in failed]

            c7 = self._chern.chern_class(self.log_cotangent, C7_DEGREE // 2)
            homogeneous = model.is_homogeneous(c7, C7_DEGREE)
            rehoused = model.rehouse(c7)
            residual_zero = rehoused.p.is_zero
            q_nf, q_stats = reduce_with_stats(rehoused.q, bt.basis)

            chk7 = self._parse_in(bt, "chk7")
            chk7_nf, chk7_stats = reduce_with_stats(chk7, bt.basis)
            display_q = model.rehouse(self._display_class("c7")).q
            linked = bt.normal_form(display_q - chk7).is_zero
            if not linked:
                linked = bt.normal_form(display_q + chk7).is_zero

            fiber = model.fiber()
            on_fiber = fiber.canonical(model.fiber_restrict(c7))

            checks = {
                "c7 homogeneous of degree 14": homogeneous,
                "rehoused c7 has no pullback part": residual_zero,
                "NF(rehoused c7) = 0": q_nf.is_zero,
                "NF(chk7) = 0": chk7_nf.is_zero,
                "rehoused c7 display agrees with chk7": linked,
                "c7 vanishes on a fiber (a = b = 0)": on_fiber.is_zero,
            }
            notes.extend(f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items())
            match = not failed and all(checks.values())

        certificate = Certificate(
            stage="c7",
            claimed=self.display_text("chk7"),
            computed=str(q_nf) if residual_zero else str(rehoused),
            match=match,
            stats={"nf_steps": q_stats.steps, "chk7_steps": chk7_stats.steps},
            elapsed_ms=clock["ms"],
            sign=self.verify_stage("c7_display").sign,
            notes=tuple(notes),
            diff=() if q_nf.is_zero else tuple(term_diff(chk7_nf, q_nf, part="q")),
            values={"c7": "0" if match else "unverified"},
        )
        logger.info("verify c7: %s", "c7 = 0" if match else "FAILED")
        return certificate

    def _verify_c8(self) -> Certificate:
        logger.info("verify c8: start")
        model = self._model
        s1 = self._rings.s1
        bt = self._rings.btilde
        notes: List[str] = []
        values: Dict[str, str] = {}
        checks: Dict[str, bool] = {}
        diff: List[TermDiff] = []
        stats: Dict[str, int] = {}

        with self._clock() as clock:
            failed = self._prerequisites(exclude="c7_display")
            notes.extend(f"prerequisite stage failed: {s}" for s in failed)
            if self.truncation < C8_DEGREE:
                checks[f"working degree at least {C8_DEGREE}"] = False

            c8 = self._chern.chern_class(self.log_cotangent, C8_DEGREE // 2)
            checks["c8 homogeneous of degree 16"] = model.is_homogeneous(c8, C8_DEGREE)

            # (1) the pullback residue
            residual = model.rehouse(c8).p
            claimed_residual = self._parse_in(s1, "c8_residual")
            values["residual"] = str(residual)
            checks["residual equals the display"] = residual == claimed_residual
            if residual != claimed_residual:
                diff.extend(term_diff(claimed_residual, residual, part="p"))
            mu = model.pair(p=self.mu)
            mu_residual = model.rehouse(mu).p
            multiplier = scalar_ratio(residual, mu_residual)
            values["multiplier"] = "none" if multiplier is None else format_coefficient(multiplier)
            checks[f"residual is {MU_MULTIPLIER}*mu's residual"] = multiplier == MU_MULTIPLIER

            # (2) c8 - 3*mu is a pure pushforward
            pushed = model.rehouse(c8 - mu.scale(MU_MULTIPLIER))
            checks["c8 - 3*mu has no pullback part"] = pushed.p.is_zero

            # (3) its pushforward part is ch8van
            x_nf, x_stats = reduce_with_stats(pushed.q, bt.basis)
            stats["nf_steps"] = x_stats.steps
            stats["x_terms"] = len(x_nf)
            ch8van = bt.normal_form(self._parse_in(bt, "ch8van"))
            checks["NF(X) equals ch8van"] = x_nf == ch8van
            if x_nf != ch8van:
                diff.extend(term_diff(ch8van, x_nf, part="q"))

            # (4) eta and xi annihilate it
            checks["eta * ch8van = 0"] = bt.normal_form(bt.ring.gen("eta") * ch8van).is_zero
            checks["(u+v) * ch8van = 0"] = bt.normal_form(bt.binding("xi") * ch8van).is_zero
            checks["xi * mu = 0 in S1"] = s1.normal_form(s1.ring.gen("xi") * self.mu).is_zero

            # (5) the kernel of xi
            notes.append(KERNEL_AXIOM)

            # (6) fiber: a = b = 0
            fiber = model.fiber()
            mu_fiber = model.fiber_restrict(mu)
            checks["mu restricts to xi^8 on a fiber"] = mu_fiber.p == fiber.s1.parse("xi^8")
            mu_pushed = fiber.rehouse(mu_fiber)
            x_fiber = model.fiber_polynomial(ch8van)
            c = scalar_ratio(x_fiber, mu_pushed.q) if mu_pushed.p.is_zero else None
            values["mu_fiber"] = str(mu_pushed.q)
            values["ch8van_fiber"] = str(x_fiber)
            values["c"] = "none" if c is None else format_coefficient(c)
            checks["c = -3"] = c is not None and c == -MU_MULTIPLIER

            # (7) c8 = 3*mu + c*mu
            vanishes = c is not None and multiplier is not None and multiplier + c == 0
            checks["3 + c = 0"] = vanishes

            notes.extend(f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items())
            match = not failed and all(checks.values())
            values["c8"] = "0" if match else "unverified"

        certificate = Certificate(
            stage="c8",
            claimed=self.display_text("ch8van"),
            computed=str(x_nf),
            match=match,
            stats=stats,
            elapsed_ms=clock["ms"],
            notes=tuple(notes),
            diff=tuple(diff[:20]),
            values=values,
        )
        logger.info("verify c8: %s", f"c = {values['c']}, c8 = 0" if match else "FAILED")
        return certificate

    def verify_stages(self) -> List[Certificate]:
        return [self.verify_stage(s) for s in STAGES]

    def verify_all(self) -> List[Certificate]:
        return [*self.verify_stages(), self.verify_c7(), self.verify_c8()]
