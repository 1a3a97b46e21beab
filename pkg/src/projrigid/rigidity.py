"""Rigidity verdicts, flexing-slope scans and filling predictions."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .cohomology import (
    Cochain1,
    CohomologyReport,
    cohomology,
    extend_coordinates,
    pairing_certificate,
    restriction_nontrivial,
)
from .field import render
from .lie import LieModule, Representation, invariant_subspace
from .linalg import Matrix, solve
from .presentations import Presentation, Word, check_relators

__all__ = [
    "CuspError",
    "FlexingError",
    "NotRigidError",
    "RigidityVerdict",
    "SlopeResult",
    "SlopeScan",
    "filling_prediction",
    "flexing_scan",
    "rigidity_report",
    "slope_word",
    "thread_count",
]


class CuspError(ValueError):
    """Cusp words whose images do not commute."""


class NotRigidError(ValueError):
    """Flexing slopes are only defined for infinitesimally rigid inputs."""


class FlexingError(ValueError):
    pass


@dataclass
class RigidityVerdict:
    cusps: int
    h1: dict
    verdict: str
    weil_garland: bool
    split_ok: bool
    reports: dict = field(default_factory=dict, repr=False)

    @property
    def rigid(self) -> bool:
        return self.verdict == "rigid"

    @property
    def h1_su31(self) -> int:
        # su(3,1) = so(3,1) + i v, so its H^1 is the sum of the two real pieces
        return self.h1["so31"] + self.h1["v"]

    def as_dict(self) -> dict:
        return {
            "cusps": self.cusps,
            "H1": dict(self.h1),
            "H1_su31": self.h1_su31,
            "verdict": self.verdict,
            "weil_garland_check": self.weil_garland,
            "split_check": self.split_ok,
        }


def _check_cusps(pres: Presentation, rep: Representation) -> None:
    for k, c in enumerate(pres.cusps):
        a = rep.word_matrix(c.meridian)
        b = rep.word_matrix(c.longitude)
        if a @ b != b @ a:
            raise CuspError(f"cusp {k + 1}: meridian and longitude images do not commute")


def rigidity_report(pres: Presentation, rep: Representation) -> RigidityVerdict:
    """Infinitesimal projective rigidity from H^1 with v, so(3,1) and sl(4) coefficients.

    Cusped inputs are rigid iff dim H^1(v) equals the number of cusps; a
    closed input (no cusps) is rigid iff H^1(sl4) vanishes.
    """
    check_relators(pres, rep)
    _check_cusps(pres, rep)
    k = pres.num_cusps
    reports = {kind: cohomology(pres, rep, LieModule(kind, rep.d))
               for kind in ("v", "so31", "sl4")}
    h1 = {kind: r.dim_h1 for kind, r in reports.items()}
    rigid = h1["sl4"] == 0 if k == 0 else h1["v"] == k
    return RigidityVerdict(
        cusps=k,
        h1=h1,
        verdict="rigid" if rigid else "non-rigid",
        weil_garland=h1["so31"] == 2 * k,
        split_ok=h1["sl4"] == h1["so31"] + h1["v"],
        reports=reports,
    )


def slope_word(pres: Presentation, cusp: int, p: int, q: int) -> Word:
    c = pres.cusps[cusp]
    return c.meridian ** p * c.longitude ** q


@dataclass
class SlopeResult:
    p: int
    q: int
    word: Word
    flexing: bool
    # (class index, invariant element, pairing value) for flexing classes
    certificates: list = field(default_factory=list)
    # (class index, b) with z(gamma) = (Ad(gamma) - 1) b for the others
    witnesses: list = field(default_factory=list)


@dataclass
class SlopeScan:
    cusp: int
    results: list

    def flexing_slopes(self) -> list[tuple[int, int]]:
        return [(r.p, r.q) for r in self.results if r.flexing]

    def lookup(self, p: int, q: int) -> Optional[SlopeResult]:
        for r in self.results:
            if (r.p, r.q) == (p, q):
                return r
        return None

    def as_dict(self, pres: Presentation) -> dict:
        out = []
        for r in self.results:
            out.append({
                "slope": [r.p, r.q],
                "word": pres.render(r.word),
                "flexing": r.flexing,
                "certificates": [
                    {"class": i, "invariant": [[render(x) for x in row] for row in a.tolist()],
                     "pairing": render(val)}
                    for i, a, val in r.certificates],
                "witnesses": [{"class": i, "b": [render(x) for x in b]}
                              for i, b in r.witnesses],
            })
        return {"cusp": self.cusp + 1, "slopes": out}


def thread_count() -> int:
    raw = os.environ.get("PROJRIGID_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _scan_one(pres: Presentation, rep: Representation, cusp: int, p: int, q: int,
              classes: Sequence[Cochain1]) -> SlopeResult:
    v = classes[0].module if classes else LieModule("v", rep.d)
    gamma = slope_word(pres, cusp, p, q)
    inv = invariant_subspace([gamma], rep, v)
    ad = rep.adjoint_word(gamma, v) - Matrix.identity(v.dim, v.d)
    res = SlopeResult(p, q, gamma, False)
    for idx, z in enumerate(classes):
        if restriction_nontrivial(z, gamma, rep):
            cert = None
            for b in inv.basis:
                a = v.element(b)
                val = pairing_certificate(z, gamma, a, rep)
                if val:
                    cert = (idx, a, val)
                    break
            if cert is None:
                # B is nondegenerate on v, so this cannot happen
                raise ArithmeticError("nontrivial restriction without a pairing certificate")
            res.certificates.append(cert)
            res.flexing = True
        else:
            res.witnesses.append((idx, solve(ad, extend_coordinates(z, gamma, rep))))
    return res


def flexing_scan(pres: Presentation, rep: Representation, cusp: int,
                 slopes: Sequence[tuple[int, int]],
                 classes: Optional[Sequence[Cochain1]] = None,
                 verdict: Optional[RigidityVerdict] = None) -> SlopeScan:
    """Test each slope mu^p lambda^q of the given cusp (0-based) for flexing.

    ``classes`` overrides the H^1(v) basis; flexing does not depend on it.
    """
    for p, q in slopes:
        if gcd(p, q) != 1:
            raise ValueError(f"slope ({p},{q}) is not primitive")
    if not 0 <= cusp < pres.num_cusps:
        raise ValueError(f"no cusp with index {cusp + 1}")
    if verdict is None:
        verdict = rigidity_report(pres, rep)
    if not verdict.rigid:
        raise NotRigidError("flexing slopes need an infinitesimally rigid input")
    if classes is None:
        v = LieModule("v", rep.d)
        report: CohomologyReport = verdict.reports.get("v") or cohomology(pres, rep, v)
        classes = report.h1_cocycles(v)
    classes = list(classes)
    jobs = [(p, q) for p, q in slopes]
    n = thread_count()
    if n > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=n) as ex:
            results = list(ex.map(lambda s: _scan_one(pres, rep, cusp, s[0], s[1], classes), jobs))
    else:
        results = [_scan_one(pres, rep, cusp, p, q, classes) for p, q in jobs]
    return SlopeScan(cusp, results)


def _line(a: int, b: int, c: int) -> str:
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    terms = []
    for coef, sym in ((a, "p"), (b, "q")):
        if coef == 0:
            continue
        mag = abs(coef)
        body = sym if mag == 1 else f"{mag}*{sym}"
        if not terms:
            terms.append(("-" if coef < 0 else "") + body)
        else:
            terms.append((" - " if coef < 0 else " + ") + body)
    return "".join(terms) + f" = {c}"


def filling_prediction(scan: SlopeScan, slope: tuple[int, int], c: int) -> str:
    """Describe the Dehn fillings predicted rigid by a flexing slope.

    The flexing slope gamma = -b*mu + a*lambda, written as ``(p, q) = (-b, a)``,
    controls fillings (p_n, q_n) on the line a*p + b*q = c.  Only the
    statement is produced; no threshold for n is computed.
    """
    res = scan.lookup(*slope)
    if res is None:
        raise FlexingError(f"slope {slope} was not scanned")
    if not res.flexing:
        raise FlexingError(f"slope {slope} is not a flexing slope")
    p0, q0 = slope
    a, b = q0, -p0
    line = _line(a, b, c)
    return (
        f"Cusp {scan.cusp + 1}: the slope ({p0},{q0}) is a flexing slope. "
        f"By the flexing-slope criterion for Dehn fillings, the fillings "
        f"(p_n, q_n) with coprime p_n, q_n on the line {line} are "
        f"infinitesimally projectively rigid for all sufficiently large |p_n| + |q_n|. "
        f"No explicit bound is computed."
    )
