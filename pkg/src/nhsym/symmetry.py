"""Symmetry relations of non-Hermitian matrices: checkers and discovery.

Six relation kinds are supported, each stored as a plain matrix plus a tag
saying which equation it enters (antilinear operators are represented by
their linear part, with conjugation applied to H in the relation):

========================  =============================================
kind                      relation checked
========================  =============================================
linear_anticommute        H M + M H = 0
antilinear_anticommute    H C + C conj(H) = 0
antilinear_commute        H X - X conj(H) = 0
transpose_minus           eta H^T + H eta = 0
dagger_plus               eta H^dagger - H eta = 0
dagger_minus              zeta H^dagger + H zeta = 0
========================  =============================================

The transpose and dagger relations are checked in inverse-free form, so a
singular candidate can still be evaluated when explicitly allowed.
Alongside the checkers: product constructors combining an antilinear
symmetry with a conjugation-type one, the symmetric/antisymmetric split
rule, a Kronecker-product nullspace engine that finds every operator of a
given kind (optionally within a matrix basis), and a 90-degree complex
rotation that exchanges which relation pair underlies a transpose-type
symmetry.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import clifford, model as model_mod
from .linalg import nullspace

LINEAR_ANTICOMMUTE = "linear_anticommute"
ANTILINEAR_ANTICOMMUTE = "antilinear_anticommute"
ANTILINEAR_COMMUTE = "antilinear_commute"
TRANSPOSE_MINUS = "transpose_minus"
DAGGER_PLUS = "dagger_plus"
DAGGER_MINUS = "dagger_minus"

KINDS = (
    LINEAR_ANTICOMMUTE,
    ANTILINEAR_ANTICOMMUTE,
    ANTILINEAR_COMMUTE,
    TRANSPOSE_MINUS,
    DAGGER_PLUS,
    DAGGER_MINUS,
)

# kinds whose defining relation conjugates the operator by an inverse
_INVERTIBLE_KINDS = (TRANSPOSE_MINUS, DAGGER_PLUS, DAGGER_MINUS)

COND_MAX = 1e8
PASS_TOL = 1e-10


@dataclass(frozen=True)
class SymOp:
    """A candidate symmetry operator: matrix, relation kind, readable label.

    Operators of transpose or dagger kind must be invertible (condition
    number at most 1e8) unless constructed with ``allow_singular=True``, in
    which case only the inverse-free form of their relation is meaningful.
    """

    matrix: np.ndarray
    kind: str
    label: str = ""
    allow_singular: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown relation kind {self.kind!r}")
        M = np.asarray(self.matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError(f"operator must be square, got shape {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ValueError("operator has non-finite entries")
        object.__setattr__(self, "matrix", M)
        if self.kind in _INVERTIBLE_KINDS and not self.allow_singular:
            cond = np.linalg.cond(M)
            if not cond <= COND_MAX:
                raise ValueError(
                    f"{self.kind} operator is singular or badly conditioned "
                    f"(cond {cond:.3g}); pass allow_singular=True to keep it"
                )


def _fro(M) -> float:
    return float(np.linalg.norm(M))


def check(H, op: SymOp) -> float:
    """Residual of the operator's defining relation, scale-normalized.

    Returns ``||R|| / (||H|| * ||op||)`` (Frobenius norms) where R is the
    relation listed in the module docstring for ``op.kind``.  A residual at
    most 1e-10 counts as satisfied; the number is returned, not thresholded.
    """
    H = np.asarray(H, dtype=complex)
    M = op.matrix
    if H.shape != M.shape:
        raise ValueError(f"dimension mismatch: H {H.shape} vs operator {M.shape}")
    if op.kind == LINEAR_ANTICOMMUTE:
        R = H @ M + M @ H
    elif op.kind == ANTILINEAR_ANTICOMMUTE:
        R = H @ M + M @ H.conj()
    elif op.kind == ANTILINEAR_COMMUTE:
        R = H @ M - M @ H.conj()
    elif op.kind == TRANSPOSE_MINUS:
        R = M @ H.T + H @ M
    elif op.kind == DAGGER_PLUS:
        R = M @ H.conj().T - H @ M
    else:  # DAGGER_MINUS
        R = M @ H.conj().T + H @ M
    denom = _fro(H) * _fro(M)
    if denom == 0:
        return 0.0 if _fro(R) == 0 else np.inf
    return _fro(R) / denom


def product_chiral(X, C, label: str = "") -> SymOp:
    """Linear anticommuting operator from an antilinear commuting X and an
    antilinear anticommuting C: the product ``X @ conj(C)``.

    When both ingredient relations hold for some H, the result anticommutes
    with that H; callers verify with :func:`check` rather than assuming.
    """
    X = np.asarray(X, dtype=complex)
    C = np.asarray(C, dtype=complex)
    if X.shape != C.shape:
        raise ValueError(f"shape mismatch: {X.shape} vs {C.shape}")
    return SymOp(X @ C.conj(), LINEAR_ANTICOMMUTE, label=label)


def product_pseudo(X, zeta, label: str = "") -> SymOp:
    """Transpose-type operator from an antilinear commuting X and a
    dagger-minus zeta: the product ``X @ conj(zeta)``.
    """
    X = np.asarray(X, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    if X.shape != zeta.shape:
        raise ValueError(f"shape mismatch: {X.shape} vs {zeta.shape}")
    return SymOp(X @ zeta.conj(), TRANSPOSE_MINUS, label=label)


def sa_split(H) -> tuple[np.ndarray, np.ndarray]:
    """Split H into its symmetric and antisymmetric parts, H = S + A."""
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"H must be square, got shape {H.shape}")
    S = (H + H.T) / 2
    A = (H - H.T) / 2
    return S, A


@dataclass(frozen=True)
class SAResult:
    """Outcome of the symmetric/antisymmetric construction.

    When the two parts anticommute, ``eta`` is the antisymmetric part
    (transpose-minus kind) and ``chiral`` is the product S @ A
    (linear-anticommute kind); otherwise both are None and
    ``anticommutator_norm`` reports ||{A, S}||.
    """

    eta: SymOp | None
    chiral: SymOp | None
    anticommutator_norm: float


def pseudo_from_sa(H, tol: float = PASS_TOL) -> SAResult:
    """Build symmetry operators from the symmetric/antisymmetric split.

    If S and A anticommute (within ``tol * ||A|| * ||S||``), the
    antisymmetric part itself satisfies the transpose-minus relation and
    S @ A anticommutes with H; both are verified before being returned.
    A singular antisymmetric part is returned with a warning and
    ``allow_singular`` set, its relation still checked in inverse-free form.
    """
    H = np.asarray(H, dtype=complex)
    S, A = sa_split(H)
    norm_a, norm_s = _fro(A), _fro(S)
    if norm_a == 0:
        return SAResult(None, None, 0.0)
    anti = _fro(A @ S + S @ A)
    if anti > tol * max(norm_a * norm_s, 1e-300):
        return SAResult(None, None, anti)
    singular = not np.linalg.cond(A) <= COND_MAX
    if singular:
        warnings.warn(
            "antisymmetric part is singular; transpose relation checked in "
            "inverse-free form only",
            UserWarning,
            stacklevel=2,
        )
    eta = SymOp(A, TRANSPOSE_MINUS, label="antisymmetric part",
                allow_singular=singular)
    chiral = None
    if norm_s != 0:
        chiral = SymOp(S @ A, LINEAR_ANTICOMMUTE, label="S @ A product")
    for op in filter(None, (eta, chiral)):
        r = check(H, op)
        if r > max(10 * anti / max(_fro(H) * _fro(op.matrix), 1e-300), tol):
            raise RuntimeError(f"split operator failed verification ({r:.3g})")
    return SAResult(eta, chiral, anti)


_RELATION_KINDS = {
    "chiral": LINEAR_ANTICOMMUTE,
    "pseudo_chiral": TRANSPOSE_MINUS,
    "nhph": ANTILINEAR_ANTICOMMUTE,
    "bosonic": ANTILINEAR_COMMUTE,
}


def discover(H, relation: str, basis=None, labels=None,
             tol: float = 1e-9) -> list[SymOp]:
    """Find every operator satisfying a relation with H, by nullspace.

    The relation is linear in the unknown operator, so its solutions are
    the kernel of a Kronecker-product map; with a basis supplied the search
    is restricted to its span and solutions are reported as coefficient
    combinations of the basis.

    Parameters
    ----------
    H : array_like
        Square complex matrix.
    relation : str
        One of ``chiral``, ``pseudo_chiral``, ``nhph``, ``bosonic``.
    basis : sequence of array_like, optional
        Linearly independent matrices spanning the search space; defaults
        to the full matrix space.
    labels : sequence, optional
        Per-basis-element labels (e.g. generator products); when given,
        each solution's label is its formatted expansion.
    tol : float
        Relative singular-value threshold for the kernel, and the bound
        every returned operator's residual is verified against.

    Returns
    -------
    list of SymOp
        A basis of the solution space, each scaled so its largest
        coefficient is exactly 1; the length is the space's dimension.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"H must be square, got shape {H.shape}")
    if relation not in _RELATION_KINDS:
        raise ValueError(
            f"unknown relation {relation!r}; expected one of {sorted(_RELATION_KINDS)}"
        )
    kind = _RELATION_KINDS[relation]
    n = H.shape[0]
    eye = np.eye(n)
    # column-stacking convention: vec(A X B) = kron(B.T, A) vec(X)
    if relation == "chiral":
        L = np.kron(eye, H) + np.kron(H.T, eye)
    elif relation == "pseudo_chiral":
        L = np.kron(eye, H) + np.kron(H, eye)
    elif relation == "nhph":
        L = np.kron(eye, H) + np.kron(H.conj().T, eye)
    else:  # bosonic
        L = np.kron(eye, H) - np.kron(H.conj().T, eye)

    if basis is not None:
        mats = [np.asarray(b, dtype=complex) for b in basis]
        if any(b.shape != (n, n) for b in mats):
            raise ValueError("basis elements must match H's shape")
        stack = np.column_stack([b.reshape(-1, order="F") for b in mats])
        if np.linalg.matrix_rank(stack, tol=1e-10 * max(n, len(mats))) < len(mats):
            raise ValueError("basis elements are linearly dependent")
        kernel = nullspace(L @ stack, tol)
    else:
        mats = None
        kernel = nullspace(L, tol)

    out = []
    for col in range(kernel.shape[1]):
        c = kernel[:, col]
        pivot = c[int(np.argmax(np.abs(c)))]
        c = c / pivot
        if mats is None:
            M = c.reshape((n, n), order="F")
            label = ""
        else:
            M = sum(c[a] * mats[a] for a in range(len(mats)))
            label = _coefficient_label(c, labels)
        op = SymOp(M, kind, label=label, allow_singular=True)
        r = check(H, op)
        if r > tol:
            raise RuntimeError(
                f"discovered operator fails its relation ({r:.3g} > {tol:g})"
            )
        out.append(op)
    return out


def _coefficient_label(c, labels) -> str:
    if labels is None:
        return ""
    cutoff = 1e-12 * float(np.abs(c).max())
    terms = []
    for a, coeff in enumerate(c):
        if abs(coeff) > cutoff:
            terms.append((labels[a], coeff))
    if all(isinstance(l, clifford.GammaLabel) for l, _ in terms):
        return clifford.format_expr(clifford.GammaExpr.from_terms(terms))
    return " + ".join(f"({coeff:.6g})*{lab}" for lab, coeff in terms)


_HINT_KINDS = {
    "chiral": LINEAR_ANTICOMMUTE,
    "nhph": ANTILINEAR_ANTICOMMUTE,
    "rt": ANTILINEAR_COMMUTE,
    "pseudo": TRANSPOSE_MINUS,
    "pseudoH": DAGGER_PLUS,
    "antipseudo": DAGGER_MINUS,
}

_LATTICE_TOKENS = ("sublattice", "mirror1", "mirror2", "mirror3", "parity")


def named_operator(m, hint: str) -> SymOp:
    """Resolve a model's symmetry hint string to a concrete operator.

    Hints have the form ``kind:opspec`` with kind one of ``chiral``,
    ``nhph``, ``rt``, ``pseudo``, ``pseudoH``, ``antipseudo``.  The opspec
    is either a ``*``-joined product of lattice tokens (``sublattice``,
    ``mirror1``..``mirror3``, ``parity``) or, for 4-site models, a
    generator expression.
    """
    kind_token, sep, opspec = hint.partition(":")
    if not sep or kind_token not in _HINT_KINDS:
        raise ValueError(f"bad hint {hint!r}")
    kind = _HINT_KINDS[kind_token]
    tokens = [t.strip() for t in opspec.split("*")]
    if all(t in _LATTICE_TOKENS for t in tokens):
        M = np.eye(m.n_sites, dtype=complex)
        for t in tokens:
            M = M @ model_mod.lattice_operator(m, t)
    else:
        if m.n_sites != 4:
            raise ValueError(
                f"generator-expression hint on a {m.n_sites}-site model: {hint!r}"
            )
        M = clifford.expr_to_matrix(opspec)
    return SymOp(M, kind, label=hint)


def hidden_nhph(beta: complex, g1: complex, g2: complex,
                tol: float = PASS_TOL) -> SymOp:
    """Antilinear anticommuting operator of the wheel model, real beta only.

    The conjugation part is the two-site rotation times
    ``Re(g2)*g1 - i*Im(g1)*g3``.  A complex beta lifts both the
    rotation-conjugation symmetry and this one, so it is refused.  The
    construction is verified against the wheel matrix before returning,
    and the product of the rotation-conjugation with this operator is
    confirmed to be a scalar multiple of the wheel's anticommuting
    operator ``Re(g2)*g1 + i*Im(g1)*g3``.
    """
    beta, g1, g2 = complex(beta), complex(g1), complex(g2)
    if beta.imag != 0:
        raise ValueError(
            "complex beta lifts the rotation-conjugation symmetry; "
            "no such operator exists"
        )
    rot2 = 1j * clifford.gamma((2, 3))  # two-site rotation, a real permutation
    core = g2.real * clifford.gamma(1) - 1j * g1.imag * clifford.gamma(3)
    C = rot2 @ core
    if not np.any(C):
        raise ValueError("degenerate parameters: Re(g2) and Im(g1) both zero")
    op = SymOp(C, ANTILINEAR_ANTICOMMUTE, label="rotation-paired conjugation")
    H = model_mod.to_matrix(model_mod.rt_wheel(beta, g1, g2))
    r = check(H, op)
    if r > tol:
        raise RuntimeError(f"construction failed verification ({r:.3g})")
    pi = product_chiral(rot2, C).matrix
    pi_expected = g2.real * clifford.gamma(1) + 1j * g1.imag * clifford.gamma(3)
    scale = np.vdot(pi_expected, pi) / np.vdot(pi_expected, pi_expected)
    if _fro(pi - scale * pi_expected) > tol * _fro(pi):
        raise RuntimeError("rotation product does not match the linear operator")
    return op


def wick_rotate(H) -> np.ndarray:
    """Multiply by -i, turning dagger-minus plus antilinear-commuting
    symmetries of H into dagger-plus plus antilinear-anticommuting ones of
    the result (the transpose-minus operator is shared by both)."""
    return -1j * np.asarray(H, dtype=complex)


@dataclass(frozen=True)
class PseudoReport:
    """Derived-operator residuals for a verified transpose-minus operator.

    ``products`` has one entry per supplied commuting matrix: the
    normalized commutator with H, and the relation residual of the product
    operator (None when the matrix does not commute).
    """

    base: float
    transpose: float
    products: tuple
    hermitian_match: float | None


def pseudo_properties(H, eta, commuting=(), tol: float = PASS_TOL) -> PseudoReport:
    """Check operators derived from a transpose-minus symmetry.

    Verifies that the transpose of ``eta`` satisfies the same relation and
    that ``w @ eta`` does for every supplied matrix w commuting with H.
    When H is Hermitian, additionally reports the difference between eta's
    transpose-relation residual and the antilinear-anticommute residual of
    the same matrix (for Hermitian H the two relations coincide exactly).

    Parameters
    ----------
    H : array_like
    eta : SymOp or array_like
        Must already satisfy the transpose-minus relation within tol.
    commuting : sequence of array_like
        Candidate matrices w; each is tested for ``[w, H] = 0`` first.
    tol : float
    """
    H = np.asarray(H, dtype=complex)
    if not isinstance(eta, SymOp):
        eta = SymOp(np.asarray(eta, dtype=complex), TRANSPOSE_MINUS,
                    allow_singular=True)
    base = check(H, eta)
    if base > tol:
        raise ValueError(f"eta does not satisfy its relation ({base:.3g} > {tol:g})")
    transposed = SymOp(eta.matrix.T, TRANSPOSE_MINUS, label="transpose",
                       allow_singular=True)
    r_transpose = check(H, transposed)
    products = []
    for w in commuting:
        w = np.asarray(w, dtype=complex)
        comm = np.linalg.norm(w @ H - H @ w)
        denom = max(_fro(w) * _fro(H), 1e-300)
        comm_rel = comm / denom
        if comm_rel <= tol:
            prod = SymOp(w @ eta.matrix, TRANSPOSE_MINUS, allow_singular=True)
            products.append((comm_rel, check(H, prod)))
        else:
            products.append((comm_rel, None))
    hermitian_match = None
    herm = np.linalg.norm(H - H.conj().T)
    if herm <= tol * max(_fro(H), 1e-300):
        as_conj = SymOp(eta.matrix, ANTILINEAR_ANTICOMMUTE)
        hermitian_match = abs(check(H, as_conj) - base)
    return PseudoReport(base, r_transpose, tuple(products), hermitian_match)


def save_op(op: SymOp, path) -> None:
    """Write an operator file: kind, dimension, then nonzero entries."""
    n = op.matrix.shape[0]
    lines = [f"kind {op.kind}", f"dim {n}"]
    if op.allow_singular:
        lines.append("flags allow_singular")
    for i in range(n):
        for j in range(n):
            v = op.matrix[i, j]
            if v != 0:
                lines.append(f"entry {i} {j} {v.real:.17g} {v.imag:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_op(path) -> SymOp:
    """Read an operator file written by :func:`save_op`."""
    kind = None
    dim = None
    allow_singular = False
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        raw_lines = fh.readlines()
    for ln, raw in enumerate(raw_lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "kind":
            kind = parts[1] if len(parts) == 2 else None
            if kind not in KINDS:
                raise ValueError(f"{path}:{ln}: unknown kind in {line!r}")
        elif parts[0] == "dim":
            try:
                dim = int(parts[1])
            except (IndexError, ValueError):
                raise ValueError(f"{path}:{ln}: bad dim line {line!r}") from None
        elif parts[0] == "flags":
            allow_singular = "allow_singular" in parts[1:]
        elif parts[0] == "entry":
            if dim is None:
                raise ValueError(f"{path}:{ln}: entry line before dim")
            try:
                i, j = int(parts[1]), int(parts[2])
                v = complex(float(parts[3]), float(parts[4]))
            except (IndexError, ValueError):
                raise ValueError(f"{path}:{ln}: bad entry line {line!r}") from None
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"{path}:{ln}: entry ({i}, {j}) out of range")
            entries.append((i, j, v))
        else:
            raise ValueError(f"{path}:{ln}: unknown keyword {parts[0]!r}")
    if kind is None or dim is None:
        raise ValueError(f"{path}: missing kind or dim line")
    M = np.zeros((dim, dim), dtype=complex)
    for i, j, v in entries:
        M[i, j] = v
    return SymOp(M, kind, allow_singular=allow_singular)
