"""Dirac matrix algebra on 4x4 complex matrices.

Five mutually anticommuting generators are indexed by 0, 1, 2, 3 and 5.
Generators 0 and 5 square to +1, generators 1, 2, 3 square to -1.  Products
of generators are kept in a canonical normal form (strictly ascending
indices, accumulated sign absorbed into a scalar coefficient), which gives
every product expression a unique representation and makes operators found
by numerical search reportable as readable expressions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

INDICES = (0, 1, 2, 3, 5)

# sign of gamma_mu @ gamma_mu
SQUARE_SIGN = {0: 1, 1: -1, 2: -1, 3: -1, 5: 1}

# transpose sign: gamma_mu.T == TRANSPOSE_SIGN[mu] * gamma_mu
TRANSPOSE_SIGN = {0: 1, 1: -1, 2: 1, 3: -1, 5: 1}

_S0 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)

_GENERATORS = {
    0: np.kron(_SZ, _S0),
    1: np.kron(1j * _SY, _SX),
    2: np.kron(1j * _SY, _SY),
    3: np.kron(1j * _SY, _SZ),
    5: np.kron(_SX, _S0),
}


def _canonicalize(indices) -> tuple[tuple[int, ...], complex]:
    """Sort a factor sequence into ascending order, tracking the sign.

    Adjacent distinct generators anticommute (each transposition contributes
    -1); adjacent equal generators collapse to their square sign.
    """
    out: list[int] = []
    coeff = 1 + 0j
    for idx in indices:
        if idx not in SQUARE_SIGN:
            raise ValueError(f"not a generator index: {idx!r}")
        pos = len(out)
        while pos > 0 and out[pos - 1] > idx:
            pos -= 1
        if (len(out) - pos) % 2:
            coeff = -coeff
        if pos > 0 and out[pos - 1] == idx:
            out.pop(pos - 1)
            coeff *= SQUARE_SIGN[idx]
        else:
            out.insert(pos, idx)
    return tuple(out), coeff


@dataclass(frozen=True)
class GammaLabel:
    """A canonical product of generators with an accumulated coefficient.

    ``indices`` is a strictly ascending tuple drawn from INDICES; the empty
    tuple is the identity.  Any ordering or repetition passed to the
    constructor is reduced to this normal form, with the sign or phase
    picked up along the way multiplied into ``coefficient``.
    """

    indices: tuple[int, ...]
    coefficient: complex = field(default=1 + 0j)

    def __post_init__(self):
        canon, sign = _canonicalize(self.indices)
        object.__setattr__(self, "indices", canon)
        object.__setattr__(self, "coefficient", complex(self.coefficient) * sign)

    def __mul__(self, other: "GammaLabel") -> "GammaLabel":
        if not isinstance(other, GammaLabel):
            return NotImplemented
        return GammaLabel(self.indices + other.indices,
                          self.coefficient * other.coefficient)

    @property
    def unit(self) -> "GammaLabel":
        """The same product with coefficient reset to 1."""
        return GammaLabel(self.indices)

    def to_matrix(self) -> np.ndarray:
        return self.coefficient * gamma(self.indices)

    def __str__(self) -> str:
        body = "*".join(f"g{i}" for i in self.indices) if self.indices else "1"
        if self.coefficient == 1:
            return body
        return f"({_format_complex(self.coefficient)})*{body}"


def gamma(label) -> np.ndarray:
    """Matrix of a generator or generator product.

    Parameters
    ----------
    label : int, sequence of int, str, or GammaLabel
        A generator index, an index sequence (multiplied left to right),
        a string such as ``"g0*g1"`` or ``"1"``, or a GammaLabel.

    Returns
    -------
    numpy.ndarray
        4x4 complex matrix with exact small-integer / imaginary-unit
        entries.  For a GammaLabel the coefficient is included.
    """
    if isinstance(label, GammaLabel):
        return label.to_matrix()
    if isinstance(label, str):
        return gamma(_parse_factors(label))
    if isinstance(label, (int, np.integer)):
        label = (int(label),)
    out = np.eye(4, dtype=complex)
    for idx in label:
        if idx not in _GENERATORS:
            raise ValueError(f"not a generator index: {idx!r}")
        out = out @ _GENERATORS[idx]
    return out


def _parse_factors(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text == "1":
        return ()
    factors = []
    for piece in text.split("*"):
        m = re.fullmatch(r"\s*g([01235])\s*", piece)
        if m is None:
            raise ValueError(f"bad generator factor {piece!r} in {text!r}")
        factors.append(int(m.group(1)))
    return tuple(factors)


def _format_complex(z: complex) -> str:
    re_s = format(z.real, ".12g")
    im_s = format(z.imag, ".12g")
    sign = "+" if not im_s.startswith("-") else ""
    return f"{re_s}{sign}{im_s}i"


@dataclass(frozen=True)
class GammaExpr:
    """A linear combination of canonical generator products.

    ``terms`` maps each product (as a GammaLabel with unit coefficient) to
    its total complex coefficient; no product appears twice.
    """

    terms: tuple[tuple[GammaLabel, complex], ...]

    @staticmethod
    def from_terms(pairs) -> "GammaExpr":
        acc: dict[tuple[int, ...], complex] = {}
        for label, coeff in pairs:
            if not isinstance(label, GammaLabel):
                label = GammaLabel(tuple(label))
            total = complex(coeff) * label.coefficient
            acc[label.indices] = acc.get(label.indices, 0j) + total
        terms = tuple(
            (GammaLabel(idx), c)
            for idx, c in sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0]))
            if c != 0
        )
        return GammaExpr(terms)

    def __add__(self, other: "GammaExpr") -> "GammaExpr":
        return GammaExpr.from_terms(list(self.terms) + list(other.terms))

    def __sub__(self, other: "GammaExpr") -> "GammaExpr":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "GammaExpr":
        return GammaExpr.from_terms([(l, scalar * c) for l, c in self.terms])

    def to_matrix(self) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        for label, coeff in self.terms:
            out += coeff * gamma(label.indices)
        return out

    def __str__(self) -> str:
        return format_expr(self)


# one term: optional sign, coefficient in parentheses, optional * factors;
# or a bare factor product with implicit coefficient 1
_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-]?)\s*"
    r"(?:\((?P<coeff>[^()]*)\)\s*(?:\*\s*(?P<factors>g[01235](?:\s*\*\s*g[01235])*|1))?"
    r"|(?P<bare>g[01235](?:\s*\*\s*g[01235])*|1))"
)


def parse_expr(text: str) -> GammaExpr:
    """Parse a generator expression string.

    Grammar: terms joined by ``+`` or ``-``; each term is a complex
    coefficient in parentheses such as ``(1.5+0i)`` or ``(0+0.2i)``,
    optionally followed by ``*`` and generator factors ``g0|g1|g2|g3|g5``
    joined by ``*``.  A bare factor product carries coefficient 1; the bare
    token ``1`` is the identity.

    Raises
    ------
    ValueError
        If the string does not fully match the grammar, with the offending
        position in the message.
    """
    pairs = []
    pos = 0
    first = True
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TERM_RE.match(text, pos)
        if m is None or (not first and m.group("sign") == ""):
            raise ValueError(f"bad expression at position {pos}: {text[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("bare") is not None:
            coeff = complex(sign)
            factors = m.group("bare")
        else:
            coeff = sign * _parse_coefficient(m.group("coeff"), pos)
            factors = m.group("factors") or "1"
        pairs.append((GammaLabel(_parse_factors(factors)), coeff))
        pos = m.end()
        first = False
    if first:
        raise ValueError(f"empty expression: {text!r}")
    return GammaExpr.from_terms(pairs)


def _parse_coefficient(body: str, pos: int) -> complex:
    cleaned = body.replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise ValueError(
            f"bad coefficient ({body!r}) at position {pos}"
        ) from None


def format_expr(e: GammaExpr) -> str:
    """Render an expression in the same grammar parse_expr accepts."""
    if not e.terms:
        return "(0+0i)"
    parts = []
    for label, coeff in e.terms:
        body = "*".join(f"g{i}" for i in label.indices) if label.indices else "1"
        parts.append(f"({_format_complex(coeff)})*{body}")
    return " + ".join(parts)


def expr_to_matrix(e) -> np.ndarray:
    """Matrix of a GammaExpr, or of a string parsed as one."""
    if isinstance(e, str):
        e = parse_expr(e)
    return e.to_matrix()


def basis16_labels() -> list[GammaLabel]:
    """The 16 canonical products: identity, 5 singles, 10 ascending pairs."""
    labels = [GammaLabel(())]
    labels += [GammaLabel((i,)) for i in INDICES]
    labels += [GammaLabel((INDICES[a], INDICES[b]))
               for a in range(5) for b in range(a + 1, 5)]
    return labels


def basis16() -> list[np.ndarray]:
    """Matrices of the 16 canonical products, spanning all 4x4 matrices."""
    return [gamma(l.indices) for l in basis16_labels()]


def expand_in_basis16(M) -> np.ndarray:
    """Coefficients of a 4x4 matrix in the 16-product basis."""
    M = np.asarray(M, dtype=complex)
    if M.shape != (4, 4):
        raise ValueError(f"need a 4x4 matrix, got shape {M.shape}")
    stack = np.column_stack([b.reshape(-1) for b in basis16()])
    return np.linalg.solve(stack, M.reshape(-1))


def verify_clifford() -> list[str]:
    """Check the defining relations of the generator set exactly.

    Distinct generators anticommute; each generator squares to its
    square sign times the identity.  Returns a list of violation
    descriptions, empty when the algebra holds.
    """
    bad = []
    eye4 = np.eye(4, dtype=complex)
    for mu in INDICES:
        for nu in INDICES:
            anti = gamma(mu) @ gamma(nu) + gamma(nu) @ gamma(mu)
            want = 2 * SQUARE_SIGN[mu] * eye4 if mu == nu else np.zeros((4, 4))
            if not np.array_equal(anti, want):
                bad.append(f"pair ({mu},{nu}): anticommutator mismatch")
    return bad


def verify_product_identities(draws: int = 100, seed: int = 0) -> list[str]:
    """Check the product anticommutation identities.

    Exactly: {g_j g_k, g_l} = 0 whenever l is j or k (j != k), and
    {g_j g_k, g_k g_l} = 0 for distinct j, k, l.  To 1e-12: for a random
    complex combination t = sum_{k != j} a_k g_k, the product g_j t
    anticommutes with t, repeated ``draws`` times with fresh coefficients.

    Returns a list of violation descriptions, empty when all hold.
    """
    bad = []
    for j in INDICES:
        for k in INDICES:
            if k == j:
                continue
            pair = gamma(j) @ gamma(k)
            for l in (j, k):
                anti = pair @ gamma(l) + gamma(l) @ pair
                if np.any(anti != 0):
                    bad.append(f"{{g{j}g{k}, g{l}}} != 0")
            for l in INDICES:
                if l in (j, k):
                    continue
                other = gamma(k) @ gamma(l)
                anti = pair @ other + other @ pair
                if np.any(anti != 0):
                    bad.append(f"{{g{j}g{k}, g{k}g{l}}} != 0")
    rng = np.random.default_rng(seed)
    for n in range(draws):
        j = INDICES[rng.integers(5)]
        rest = [k for k in INDICES if k != j]
        a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        tilde = sum(a[m] * gamma(rest[m]) for m in range(4))
        prod = gamma(j) @ tilde
        anti = prod @ tilde + tilde @ prod
        if np.abs(anti).max() > 1e-12:
            bad.append(f"draw {n}: {{g{j}*t, t}} residual {np.abs(anti).max():g}")
    return bad
