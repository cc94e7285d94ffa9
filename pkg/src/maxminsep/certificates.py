"""Minimality checkers and the two greedy certificate-extension procedures.

A separator certificate is a pair of disjoint connected sets ``(S, T)`` with
no edges between them such that every forced vertex joins them; an oct
certificate is a bipartite induced base with which every forced vertex closes
an odd cycle.  Either certificate guarantees a greedy extension to a full
minimal solution containing the forced set, and the extension here verifies
its own output before returning it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import (
    Graph,
    bits,
    is_bipartite_mask,
    is_connected_mask,
    mask_of,
    reach_mask,
    set_of,
)

KIND_ST_SEPARATOR = "minimal-st-separator"
KIND_OCT = "minimal-oct"


class CertificateError(ValueError):
    """Contract violation: the supplied certificate or request is invalid."""


@dataclass(frozen=True)
class SeparatorCertificate:
    s_side: frozenset[int]
    t_side: frozenset[int]


@dataclass(frozen=True)
class OctCertificate:
    base: frozenset[int]


@dataclass(frozen=True)
class ExtensionRequest:
    forced: frozenset[int] = frozenset()


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Witness:
    """A verified solution together with the log of decisions producing it."""

    kind: str
    solution: frozenset[int]
    trace: tuple[str, ...] = ()
    s: int | None = None
    t: int | None = None
    k: int | None = None

    def to_json_dict(self, graph_sha256: str | None = None) -> dict:
        out = {
            "kind": self.kind,
            "k": self.k if self.k is not None else len(self.solution),
            "s": self.s + 1 if self.s is not None else None,
            "t": self.t + 1 if self.t is not None else None,
            "solution": [v + 1 for v in sorted(self.solution)],
            "trace": list(self.trace),
        }
        if graph_sha256 is not None:
            out["graph_sha256"] = graph_sha256
        return out

    def to_json(self, graph_sha256: str | None = None) -> str:
        return json.dumps(self.to_json_dict(graph_sha256), indent=2) + "\n"

    @staticmethod
    def from_json_dict(data: dict) -> tuple[Witness, str | None]:
        w = Witness(
            kind=data["kind"],
            solution=frozenset(v - 1 for v in data["solution"]),
            trace=tuple(data.get("trace", ())),
            s=data["s"] - 1 if data.get("s") is not None else None,
            t=data["t"] - 1 if data.get("t") is not None else None,
            k=data.get("k"),
        )
        return w, data.get("graph_sha256")


# ---------------------------------------------------------------------------
# Minimality checkers.


def is_minimal_st_separator(g: Graph, s: int, t: int, z: Iterable[int]) -> bool:
    """True iff removing ``z`` separates s from t and no proper subset does."""
    g.check_vertex(s)
    g.check_vertex(t)
    zset = g.check_subset(z)
    if s == t:
        raise CertificateError("s and t must be distinct")
    if s in zset or t in zset:
        raise CertificateError("s and t must not belong to the candidate separator")
    zmask = mask_of(zset)
    return _is_minimal_st_separator_mask(g, 1 << s, 1 << t, zmask)


def _is_minimal_st_separator_mask(g: Graph, smask: int, tmask: int, zmask: int) -> bool:
    """Set-to-set form: z separates the S-set from the T-set minimally."""
    full = g.full_mask
    if reach_mask(g, smask, full & ~zmask) & tmask:
        return False
    for v in bits(zmask):
        if not reach_mask(g, smask, full & ~(zmask & ~(1 << v))) & tmask:
            return False
    return True


def is_minimal_set_separator(
    g: Graph, a_side: Iterable[int], b_side: Iterable[int], z: Iterable[int]
) -> bool:
    """Set-to-set variant of :func:`is_minimal_st_separator`."""
    amask = mask_of(g.check_subset(a_side))
    bmask = mask_of(g.check_subset(b_side))
    zmask = mask_of(g.check_subset(z))
    if amask == 0 or bmask == 0:
        raise CertificateError("both sides must be non-empty")
    if zmask & (amask | bmask):
        raise CertificateError("separator must be disjoint from both sides")
    return _is_minimal_st_separator_mask(g, amask, bmask, zmask)


def is_minimal_oct(g: Graph, z: Iterable[int]) -> bool:
    """True iff ``G - z`` is bipartite and no proper subset of ``z`` works."""
    zmask = mask_of(g.check_subset(z))
    rest = g.full_mask & ~zmask
    if not is_bipartite_mask(g, rest):
        return False
    for v in bits(zmask):
        if is_bipartite_mask(g, rest | (1 << v)):
            return False
    return True


# ---------------------------------------------------------------------------
# Certificate checkers (reason codes instead of bare booleans).


def check_separator_certificate(
    g: Graph, cert: SeparatorCertificate, req: ExtensionRequest
) -> CheckResult:
    s_side = g.check_subset(cert.s_side)
    t_side = g.check_subset(cert.t_side)
    forced = g.check_subset(req.forced)
    if not s_side or not t_side:
        return CheckResult(False, "empty-side")
    if s_side & t_side:
        return CheckResult(False, "sides-overlap")
    smask, tmask = mask_of(s_side), mask_of(t_side)
    if not is_connected_mask(g, smask):
        return CheckResult(False, "s-side-disconnected")
    if not is_connected_mask(g, tmask):
        return CheckResult(False, "t-side-disconnected")
    for u in s_side:
        if g.adj_masks[u] & tmask:
            return CheckResult(False, "edge-between-sides")
    if forced & (s_side | t_side):
        return CheckResult(False, "forced-overlaps-certificate")
    for v in sorted(forced):
        if not (g.adj_masks[v] & smask and g.adj_masks[v] & tmask):
            return CheckResult(False, f"forced-vertex-not-connecting:{v}")
    return CheckResult(True)


def check_oct_certificate(
    g: Graph, cert: OctCertificate, req: ExtensionRequest
) -> CheckResult:
    base = g.check_subset(cert.base)
    forced = g.check_subset(req.forced)
    bmask = mask_of(base)
    if not is_bipartite_mask(g, bmask):
        return CheckResult(False, "base-not-bipartite")
    if forced & base:
        return CheckResult(False, "forced-overlaps-certificate")
    for v in sorted(forced):
        if is_bipartite_mask(g, bmask | (1 << v)):
            return CheckResult(False, f"forced-vertex-no-odd-cycle:{v}")
    return CheckResult(True)


# ---------------------------------------------------------------------------
# Greedy extensions.


def _resolve_order(
    g: Graph, order: Sequence[int] | None, excluded: frozenset[int]
) -> list[int]:
    pending = [v for v in g.vertices() if v not in excluded]
    if order is None:
        return pending
    chosen = [v for v in order if v not in excluded]
    if sorted(chosen) != sorted(pending):
        raise CertificateError(
            "order must cover every vertex outside the certificate exactly once"
        )
    return chosen


def extend_separator_certificate(
    g: Graph,
    cert: SeparatorCertificate,
    req: ExtensionRequest,
    order: Sequence[int] | None = None,
    s: int | None = None,
    t: int | None = None,
) -> Witness:
    """Grow the certificate to a full minimal st-separator containing ``forced``.

    Processes the vertices outside ``S u T`` in ``order`` (ascending id by
    default): a vertex adjacent to both current sides joins the separator,
    anything else is absorbed and the sides grow to their reachable sets.
    """
    res = check_separator_certificate(g, cert, req)
    if not res:
        raise CertificateError(f"invalid separator certificate: {res.reason}")
    s = min(cert.s_side) if s is None else s
    t = min(cert.t_side) if t is None else t
    if s not in cert.s_side or t not in cert.t_side:
        raise CertificateError("s must lie in s_side and t in t_side")

    smask, tmask = mask_of(cert.s_side), mask_of(cert.t_side)
    base = smask | tmask
    z: list[int] = []
    trace = [
        f"extend-separator: start S={sorted(cert.s_side)} T={sorted(cert.t_side)} "
        f"forced={sorted(req.forced)}"
    ]
    for v in _resolve_order(g, order, set_of(base)):
        vbit = 1 << v
        if g.adj_masks[v] & smask and g.adj_masks[v] & tmask:
            z.append(v)
            trace.append(f"separator += {v}")
        else:
            base |= vbit
            smask = reach_mask(g, smask, base)
            tmask = reach_mask(g, tmask, base)
            trace.append(f"absorb {v}")
    solution = frozenset(z)
    if not req.forced <= solution:
        raise AssertionError("greedy extension lost a forced vertex")
    if not is_minimal_st_separator(g, s, t, solution):
        raise AssertionError("greedy extension produced a non-minimal separator")
    trace.append(f"result Z={sorted(solution)} (s={s}, t={t})")
    return Witness(
        kind=KIND_ST_SEPARATOR,
        solution=solution,
        trace=tuple(trace),
        s=s,
        t=t,
        k=len(solution),
    )


def extend_oct_certificate(
    g: Graph,
    cert: OctCertificate,
    req: ExtensionRequest,
    order: Sequence[int] | None = None,
) -> Witness:
    """Grow the bipartite base to a full minimal oct containing ``forced``.

    Vertices that keep the base bipartite are absorbed; the rest join the
    transversal.
    """
    res = check_oct_certificate(g, cert, req)
    if not res:
        raise CertificateError(f"invalid oct certificate: {res.reason}")
    bmask = mask_of(cert.base)
    z: list[int] = []
    trace = [f"extend-oct: start base={sorted(cert.base)} forced={sorted(req.forced)}"]
    for v in _resolve_order(g, order, cert.base):
        vbit = 1 << v
        if is_bipartite_mask(g, bmask | vbit):
            bmask |= vbit
            trace.append(f"absorb {v}")
        else:
            z.append(v)
            trace.append(f"transversal += {v}")
    solution = frozenset(z)
    if not req.forced <= solution:
        raise AssertionError("greedy extension lost a forced vertex")
    if not is_minimal_oct(g, solution):
        raise AssertionError("greedy extension produced a non-minimal oct")
    trace.append(f"result Z={sorted(solution)}")
    return Witness(kind=KIND_OCT, solution=solution, trace=tuple(trace), k=len(solution))


def verify_witness(g: Graph, witness: Witness) -> bool:
    """Re-run the matching minimality checker; size threshold included when set."""
    if witness.kind == KIND_ST_SEPARATOR:
        if witness.s is None or witness.t is None:
            return False
        ok = is_minimal_st_separator(g, witness.s, witness.t, witness.solution)
    elif witness.kind == KIND_OCT:
        ok = is_minimal_oct(g, witness.solution)
    else:
        return False
    if ok and witness.k is not None:
        ok = len(witness.solution) >= witness.k
    return ok
