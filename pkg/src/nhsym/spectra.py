"""Spectral consequences of the symmetry relations.

Tools to classify a spectrum's reflection symmetries (through the origin,
the real axis, the imaginary axis), extract exact and imaginary-axis zero
modes, locate exceptional points in one-parameter families by bisecting on
eigenvalue coalescence, sweep a parameter while tracking eigenvalue
trajectories by continuity, and resolve a mode's intensity pattern over
labeled sites.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import model as model_mod
from .linalg import eig, multiplicities

CLASSIFY_TOL = 1e-8
ZERO_FLAG_TOL = 1e-8
DEGENERACY_TOL = 1e-6
# eigenvalue-pair dip depth (relative to spectral radius) worth refining,
# the shrink factor a refined dip must beat, and the eigenvector overlap
# that separates coalescence from a symmetry-allowed crossing
EP_DIP = 0.05
EP_CONFIRM = 0.6
EP_OVERLAP = 0.9

_AXES = ("origin", "real", "imag")


def _image(values, axis):
    if axis == "origin":
        return -values
    if axis == "real":
        return np.conj(values)
    if axis == "imag":
        return -np.conj(values)
    raise ValueError(f"unknown axis {axis!r}; expected one of {_AXES}")


def _matching_defect(values, images) -> float:
    cost = np.abs(values[:, None] - images[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@dataclass(frozen=True)
class SpectrumSymmetry:
    """Reflection defects of an eigenvalue multiset.

    Each field is the largest matching distance when the multiset is
    paired with its image under the reflection; a defect at most ``tol``
    means the symmetry holds.
    """

    origin: float
    real_axis: float
    imag_axis: float
    tol: float

    def held(self) -> tuple[str, ...]:
        out = []
        if self.origin <= self.tol:
            out.append("origin")
        if self.real_axis <= self.tol:
            out.append("real")
        if self.imag_axis <= self.tol:
            out.append("imag")
        return tuple(out)


def classify_spectrum(values, tol: float = CLASSIFY_TOL) -> SpectrumSymmetry:
    """Measure how close a multiset of eigenvalues is to each reflection
    symmetry, using an optimal pairing between the set and its image."""
    values = np.asarray(values, dtype=complex).ravel()
    if values.size == 0:
        raise ValueError("empty spectrum")
    return SpectrumSymmetry(
        origin=_matching_defect(values, _image(values, "origin")),
        real_axis=_matching_defect(values, _image(values, "real")),
        imag_axis=_matching_defect(values, _image(values, "imag")),
        tol=tol,
    )


@dataclass(frozen=True)
class ZeroMode:
    """An eigenpair pinned to zero or to the imaginary axis.

    ``kind`` is ``"zero"`` for |eps| below tolerance and ``"imaginary"``
    for a nonzero eigenvalue with vanishing real part (its own image under
    the particle-hole reflection).
    """

    value: complex
    vector: np.ndarray
    kind: str


def zero_modes(H, tol: float = 1e-9) -> list[ZeroMode]:
    """Eigenpairs at zero or on the imaginary axis, tolerance relative to
    ||H||."""
    H = np.asarray(H, dtype=complex)
    system = eig(H)
    scale = max(float(np.linalg.norm(H)), 1e-300)
    out = []
    for idx, value in enumerate(system.values):
        value = complex(value)
        if abs(value) <= tol * scale:
            kind = "zero"
        elif abs(value.real) <= tol * scale:
            kind = "imaginary"
        else:
            continue
        out.append(ZeroMode(value, system.right_vectors[:, idx], kind))
    return out


@dataclass(frozen=True)
class EPReport:
    """Result of an exceptional-point search.

    ``order`` is algebraic - geometric + 1 at the located parameter;
    ``spread`` is the residual coalescence measure (second-smallest
    distance from the target) at that parameter.  When nothing coalesces
    within ``found_tol``, ``found`` is False and only ``parameter`` (the
    best candidate) and ``spread`` are meaningful.
    """

    found: bool
    parameter: float
    value: complex | None
    algebraic: int
    geometric: int
    order: int
    spread: float


def jordan2(delta: float) -> np.ndarray:
    """Two-level family [[0, 1], [delta, 0]] with a second-order
    exceptional point at delta = 0."""
    return np.array([[0.0, 1.0], [float(delta), 0.0]], dtype=complex)


def ep_locate(family: Callable[[float], np.ndarray], bracket,
              target: complex = 0j, param_tol: float = 1e-8,
              found_tol: float = 1e-3, cluster_tol: float | None = None,
              ) -> EPReport:
    """Locate a parameter where eigenvalues coalesce at ``target``.

    A 41-point scan over the bracket seeds a golden-section minimization of
    the second-smallest distance |eps - target| (second-smallest so that a
    symmetry-protected mode already sitting at the target does not mask the
    coalescence).  The parameter is refined to within ``param_tol``; the
    point counts as found when the minimized distance is at most
    ``found_tol``.  Multiplicities are then measured with a cluster radius
    of ``cluster_tol`` (default: five times the residual spread, floored at
    1e-7 ||H||).
    """
    a, b = float(bracket[0]), float(bracket[1])
    if not a < b:
        raise ValueError(f"bracket must satisfy lo < hi, got ({a}, {b})")

    def spread(p: float) -> float:
        vals = eig(np.asarray(family(p), dtype=complex)).values
        if vals.size < 2:
            raise ValueError("family must have at least two eigenvalues")
        return float(np.partition(np.abs(vals - target), 1)[1])

    grid = np.linspace(a, b, 41)
    coarse = [spread(p) for p in grid]
    k = int(np.argmin(coarse))
    lo = float(grid[max(k - 1, 0)])
    hi = float(grid[min(k + 1, grid.size - 1)])

    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = spread(x1), spread(x2)
    while hi - lo > param_tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = spread(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = spread(x2)
    p_hat = (lo + hi) / 2.0
    s_hat = spread(p_hat)
    if s_hat > found_tol:
        return EPReport(False, p_hat, None, 0, 0, 0, s_hat)

    H = np.asarray(family(p_hat), dtype=complex)
    radius = cluster_tol
    if radius is None:
        radius = max(5.0 * s_hat, 1e-7 * float(np.linalg.norm(H)))
    vals = eig(H).values
    cluster = vals[np.abs(vals - target) <= radius]
    value = complex(cluster.mean()) if cluster.size else complex(target)
    alg, geo = multiplicities(H, value, tol=radius)
    return EPReport(True, p_hat, value, alg, geo, alg - geo + 1, s_hat)


@dataclass(frozen=True)
class SweepStep:
    value: float
    eigenvalues: np.ndarray
    flags: tuple[str, ...]


@dataclass(frozen=True)
class SweepEvent:
    step: int
    param: float
    kind: str


@dataclass(frozen=True)
class SweepResult:
    """Eigenvalue trajectories over a parameter range.

    ``steps`` hold the parameter value, the eigenvalues reordered so mode
    identity is continuous from step to step, and per-mode flags (``Z``
    at zero, ``I`` on the imaginary axis, ``D`` near-degenerate).
    ``events`` mark steps where the zero-mode count changes
    (``zero_crossing``), the near-degenerate count changes
    (``degeneracy``), or a pair of trajectories dips toward coalescence
    and a tenfold-refined scan confirms the dip deepens
    (``ep_candidate``).
    """

    param_name: str
    steps: tuple[SweepStep, ...]
    events: tuple[SweepEvent, ...]


def _segment_miss(z1: complex, z2: complex) -> float:
    """Distance from the origin to the segment between two complex points."""
    dz = z2 - z1
    length2 = abs(dz) ** 2
    if length2 == 0:
        return abs(z1)
    t = -np.real(np.conj(dz) * z1) / length2
    t = min(max(t, 0.0), 1.0)
    return abs(z1 + t * dz)


def _mode_flags(values) -> tuple[str, ...]:
    n = values.size
    flags = []
    for i in range(n):
        s = ""
        if abs(values[i]) <= ZERO_FLAG_TOL:
            s += "Z"
        elif abs(values[i].real) <= ZERO_FLAG_TOL:
            s += "I"
        others = np.abs(values - values[i])
        others[i] = np.inf
        if others.min() <= DEGENERACY_TOL:
            s += "D"
        flags.append(s)
    return tuple(flags)


def sweep(family: Callable[[float], np.ndarray], lo: float, hi: float,
          n_steps: int = 400, param_name: str = "param") -> SweepResult:
    """Track eigenvalues of ``family(p)`` across ``n_steps`` parameters.

    Mode identity is kept by minimum-total-distance assignment between
    consecutive spectra.  Exactly degenerate trajectories stay flat and
    are reported through the ``D`` flag, not as coalescence events; an
    ``ep_candidate`` needs a strict local minimum of a pair distance that
    a refined scan between the neighboring steps deepens further.
    """
    if n_steps < 2:
        raise ValueError("n_steps must be at least 2")
    params = np.linspace(float(lo), float(hi), n_steps)
    rows = []
    prev = None
    for p in params:
        vals = eig(np.asarray(family(p), dtype=complex)).values
        if prev is not None:
            cost = np.abs(prev[:, None] - vals[None, :])
            ridx, cidx = linear_sum_assignment(cost)
            vals = vals[cidx[np.argsort(ridx)]]
        rows.append(vals)
        prev = vals
    traj = np.array(rows)
    n = traj.shape[1]

    steps = tuple(
        SweepStep(float(params[k]), traj[k].copy(), _mode_flags(traj[k]))
        for k in range(n_steps)
    )

    amax = float(np.abs(traj).max())
    events: list[SweepEvent] = []
    count_z = [sum(1 for f in s.flags if "Z" in f) for s in steps]
    count_d = [sum(1 for f in s.flags if "D" in f) for s in steps]
    for k in range(1, n_steps):
        crossing = count_z[k] != count_z[k - 1]
        if not crossing:
            # an unpinned trajectory sweeping straight through the origin
            # between grid points never changes the zero count
            for i in range(n):
                z1, z2 = traj[k - 1, i], traj[k, i]
                if abs(z1) <= ZERO_FLAG_TOL and abs(z2) <= ZERO_FLAG_TOL:
                    continue
                if _segment_miss(z1, z2) <= 1e-9 * max(amax, 1e-300):
                    crossing = True
                    break
        if crossing:
            events.append(SweepEvent(k, float(params[k]), "zero_crossing"))
        if count_d[k] != count_d[k - 1]:
            events.append(SweepEvent(k, float(params[k]), "degeneracy"))

    threshold = EP_DIP * max(amax, 1e-300)
    ep_steps = set()
    for i in range(n):
        for j in range(i + 1, n):
            d = np.abs(traj[:, i] - traj[:, j])
            for k in range(1, n_steps - 1):
                if k in ep_steps:
                    continue
                # a pair already degenerate at the dip bottom is a crossing
                # or a protected doublet, reported through the D flag
                if not DEGENERACY_TOL < d[k] <= threshold:
                    continue
                if not (d[k] < d[k - 1] and d[k] < d[k + 1]):
                    continue
                mid = (traj[k, i] + traj[k, j]) / 2.0
                best = d[k]
                overlap = 0.0
                for q in np.linspace(params[k - 1], params[k + 1], 21):
                    system = eig(np.asarray(family(q), dtype=complex))
                    order = np.argsort(np.abs(system.values - mid))
                    a, b = int(order[0]), int(order[1])
                    pair = abs(system.values[a] - system.values[b])
                    if pair < best:
                        best = float(pair)
                        overlap = abs(np.vdot(system.right_vectors[:, a],
                                              system.right_vectors[:, b]))
                if best <= EP_CONFIRM * d[k] and overlap >= EP_OVERLAP:
                    ep_steps.add(k)
                    events.append(SweepEvent(k, float(params[k]), "ep_candidate"))
    events.sort(key=lambda e: (e.step, e.kind))
    return SweepResult(param_name, steps, tuple(events))


def to_csv(result: SweepResult, path) -> None:
    """Write trajectories as ``param,mode_id,re,im,flags`` rows with full
    (17 significant digit) precision, so repeated runs are byte-identical."""
    lines = ["param,mode_id,re,im,flags"]
    for step in result.steps:
        for i, v in enumerate(step.eigenvalues):
            lines.append(
                f"{step.value:.17g},{i},{v.real:.17g},{v.imag:.17g},{step.flags[i]}"
            )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def intensity_ratio(psi, m) -> float:
    """Peak intensity on B sites over peak intensity on A sites.

    Returns inf when the mode has no weight on the A sublattice.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    labels = np.array(m.sublattice)
    if psi.size != labels.size:
        raise ValueError(f"vector length {psi.size} != {m.n_sites} sites")
    if "A" not in labels or "B" not in labels:
        raise ValueError(f"model {m.name!r} has no A/B site labels")
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValueError("zero vector")
    intensity = np.abs(psi / norm) ** 2
    peak_a = float(intensity[labels == "A"].max())
    peak_b = float(intensity[labels == "B"].max())
    if peak_a < 1e-14:
        return np.inf
    return peak_b / peak_a


@dataclass(frozen=True)
class ProfileResult:
    """Site-resolved picture of one mode: the matched eigenvalue, the unit
    eigenvector, per-site intensities, the B/A peak ratio (None without
    sublattice labels), and whether other eigenvalues sit within tolerance
    of the request (making the vector one member of a degenerate set)."""

    value: complex
    vector: np.ndarray
    intensity: np.ndarray
    ratio: float | None
    degenerate: bool


def mode_profile(H, value: complex, m, tol: float = 1e-7) -> ProfileResult:
    """Profile the eigenmode closest to ``value`` (tolerance relative to
    ||H||) over the model's sites."""
    H = np.asarray(H, dtype=complex)
    if H.shape[0] != m.n_sites:
        raise ValueError(f"matrix size {H.shape[0]} != {m.n_sites} sites")
    system = eig(H)
    scale = max(float(np.linalg.norm(H)), 1e-300)
    dist = np.abs(system.values - value)
    inside = dist <= tol * scale
    if not inside.any():
        raise ValueError(
            f"no eigenvalue within {tol:g}*||H|| of {value}; "
            f"closest is {system.values[int(np.argmin(dist))]}"
        )
    idx = int(np.argmin(dist))
    psi = system.right_vectors[:, idx]
    intensity = np.abs(psi) ** 2
    labels = np.array(m.sublattice)
    ratio = None
    if "A" in labels and "B" in labels:
        ratio = intensity_ratio(psi, m)
    return ProfileResult(complex(system.values[idx]), psi, intensity, ratio,
                         degenerate=int(inside.sum()) > 1)


@dataclass(frozen=True)
class Protocol:
    """A one-parameter figure protocol: which model family to sweep, over
    what range, and which spectrum reflections should hold at every step."""

    tag: str
    param_name: str
    lo: float
    hi: float
    model_at: Callable[[float], "model_mod.Model"]
    symmetric: tuple[str, ...]

    def matrix_at(self, p: float) -> np.ndarray:
        return model_mod.to_matrix(self.model_at(p))


def protocol(tag: str) -> Protocol:
    """Named sweep protocols for the bundled models.

    ========  ==========================================================
    tag       family
    ========  ==========================================================
    1b        gain/loss flake, g = 1, tau in [0, 2]
    2b        wheel, beta = 0.75, g1 = 1 + i s, g2 = 1.5 + i s, s in [0, 2]
    2c        same wheel with beta = 0.75 - 0.1i (origin symmetry only)
    4c        chiral pyramid with detuning a e^{i pi/4} g3*g5, a in [0, 2]
    4d        as 4c plus a e^{i pi/3} g1*g2
    5b        mirror chain, delta in [0, |coupling|]
    ========  ==========================================================
    """
    if tag == "1b":
        return Protocol("1b", "tau", 0.0, 2.0,
                        lambda t: model_mod.honeycomb_flake(1.0, t),
                        ("origin", "real", "imag"))
    if tag == "2b":
        return Protocol("2b", "s", 0.0, 2.0,
                        lambda s: model_mod.rt_wheel(0.75, 1.0 + 1j * s,
                                                     1.5 + 1j * s),
                        ("origin", "real", "imag"))
    if tag == "2c":
        return Protocol("2c", "s", 0.0, 2.0,
                        lambda s: model_mod.rt_wheel(0.75 - 0.1j, 1.0 + 1j * s,
                                                     1.5 + 1j * s),
                        ("origin",))
    if tag == "4c":
        return Protocol(
            "4c", "alpha", 0.0, 2.0,
            lambda a: model_mod.pyramid(
                "chiral", 1.0, 1.0, 0.8,
                detunings=(((3, 5), a * np.exp(1j * np.pi / 4)),)),
            ("origin",))
    if tag == "4d":
        return Protocol(
            "4d", "alpha", 0.0, 2.0,
            lambda a: model_mod.pyramid(
                "chiral", 1.0, 1.0, 0.8,
                detunings=(((3, 5), a * np.exp(1j * np.pi / 4)),
                           ((1, 2), a * np.exp(1j * np.pi / 3)))),
            ("origin",))
    if tag == "5b":
        hi = float(abs(model_mod.CHAIN_COUPLING))
        return Protocol("5b", "delta", 0.0, hi,
                        lambda d: model_mod.mirror_chain(d),
                        ("origin", "real", "imag"))
    raise ValueError(f"unknown protocol tag {tag!r}")
