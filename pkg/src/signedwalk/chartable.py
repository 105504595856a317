"""Character tables via class-sum eigenvectors over a prime field.

The class-sum multiplication operators act on the center of the group algebra;
over a prime field ell = 1 (mod exponent), ell > 2*sqrt(|G|), they are
simultaneously diagonalizable and their common eigenvectors are, up to scale,
the rows of the character table reduced mod ell.  Splitting eigenspaces class
by class, normalizing at the identity class, recovering degrees by modular
square roots, and lifting each value through its eigenvalue multiplicities
yields the complex table exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NonIntegralMultiplicity, NoSuitablePrime, TooManyClasses
from .groups import ConjugacyClasses, FiniteGroup, conjugacy_classes, element_order
from .modarith import (
    charpoly_mod,
    element_of_order,
    inv_mod,
    matmul_mod,
    nullspace_mod,
    roots_mod,
    solve_in_span,
    sqrt_mod,
)
from .primes import is_prime

MAX_CLASSES = 512
_PRIME_SEARCH_BOUND = 2**31


@dataclass
class CharacterTable:
    """Complex irreducible characters on conjugacy classes, plus class metadata."""

    group: FiniteGroup
    classes: ConjugacyClasses
    class_orders: tuple[int, ...]  # order of each class representative
    inverse_class: tuple[int, ...]
    degrees: tuple[int, ...]
    values: np.ndarray  # (num_chars, num_classes) complex128
    exponent: int
    modulus: int  # prime field used for the eigenvector computation

    @property
    def num_classes(self) -> int:
        return self.classes.count

    def is_central_class(self, c: int) -> bool:
        return self.classes.sizes[c] == 1

    def central_classes(self) -> list[int]:
        return [c for c in range(self.num_classes) if self.is_central_class(c)]

    def noncentral_classes(self) -> list[int]:
        return [c for c in range(self.num_classes) if not self.is_central_class(c)]

    def nonlinear_characters(self) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d > 1]

    def central_order(self, class_index: int) -> int:
        """Order of g*Z(G) in G/Z(G) for the class representative g."""
        G = self.group
        g = self.classes.representatives[class_index]
        cur, u = g, 1
        while not self.is_central_class(int(self.classes.class_of[cur])):
            cur = G.mul(cur, g)
            u += 1
        return u

    def power_classes(self, class_index: int) -> list[int]:
        """Class ids of g^u for u = 0..ord(g)-1, g the class representative."""
        G = self.group
        g = self.classes.representatives[class_index]
        out = [0]
        cur = g
        for _ in range(self.class_orders[class_index] - 1):
            out.append(int(self.classes.class_of[cur]))
            cur = G.mul(cur, g)
        return out

    def to_json(self) -> dict:
        return {
            "order": self.group.order,
            "exponent": self.exponent,
            "modulus": self.modulus,
            "classes": [
                {
                    "representative": self.group.encoding(rep).hex(),
                    "size": size,
                    "element_order": k,
                }
                for rep, size, k in zip(
                    self.classes.representatives, self.classes.sizes, self.class_orders
                )
            ],
            "degrees": list(self.degrees),
            "characters": [
                [[float(v.real), float(v.imag)] for v in row] for row in self.values
            ],
        }


def _find_table_prime(exponent: int, group_order: int) -> int:
    floor = 2 * math.isqrt(4 * group_order)  # ell with ell^2 > 4|G|
    t = 1
    while exponent * t + 1 < _PRIME_SEARCH_BOUND:
        ell = exponent * t + 1
        if ell * ell > 4 * group_order and is_prime(ell):
            return ell
        t += 1
    raise NoSuitablePrime(
        f"no prime = 1 (mod {exponent}) above {floor} below {_PRIME_SEARCH_BOUND}"
    )


def _class_matrix(G: FiniteGroup, cc: ConjugacyClasses, i: int, ell: int) -> np.ndarray:
    """Multiplication-by-class-sum operator in the class basis, reduced mod ell."""
    r = cc.count
    members = cc.members(i)
    xinv = np.array([G.inv(int(x)) for x in members], dtype=np.int64)
    M = np.zeros((r, r), dtype=np.int64)
    for k, zk in enumerate(cc.representatives):
        y = G.mul_many(xinv, zk)
        M[k] = np.bincount(cc.class_of[y], minlength=r)
    return M % ell


def dixon_character_table(
    G: FiniteGroup,
    classes: ConjugacyClasses | None = None,
    max_classes: int = MAX_CLASSES,
) -> CharacterTable:
    """Full complex character table of an enumerated group.

    Raises TooManyClasses above `max_classes` and NoSuitablePrime if the
    working-field search fails.  Deterministic: no randomness anywhere.
    """
    cc = classes if classes is not None else conjugacy_classes(G)
    r = cc.count
    if r > max_classes:
        raise TooManyClasses(f"{r} classes exceeds cap {max_classes}")
    class_orders = tuple(element_order(G, rep) for rep in cc.representatives)
    exponent = 1
    for k in class_orders:
        exponent = exponent * k // math.gcd(exponent, k)
    ell = _find_table_prime(exponent, G.order)
    inverse_class = tuple(int(cc.class_of[G.inv(rep)]) for rep in cc.representatives)

    # split the class-function space into common eigenlines
    spaces: list[np.ndarray] = [np.eye(r, dtype=np.int64)]
    processing = sorted(range(1, r), key=lambda i: (cc.sizes[i], i))
    for i in processing:
        if all(W.shape[1] == 1 for W in spaces):
            break
        Mi = _class_matrix(G, cc, i, ell)
        refined: list[np.ndarray] = []
        for W in spaces:
            if W.shape[1] == 1:
                refined.append(W)
                continue
            A = solve_in_span(W, matmul_mod(Mi, W, ell), ell)
            covered = 0
            for lam in roots_mod(charpoly_mod(A, ell), ell):
                shifted = (A - lam * np.eye(A.shape[0], dtype=np.int64)) % ell
                K = nullspace_mod(shifted, ell)
                if K.shape[1] == 0:
                    continue
                refined.append(matmul_mod(W, K, ell))
                covered += K.shape[1]
            if covered != W.shape[1]:
                raise ArithmeticError("class operator failed to split semisimply")
        spaces = refined
    if any(W.shape[1] != 1 for W in spaces):
        raise ArithmeticError("class operators did not separate all characters")

    # normalize eigenvectors and recover degrees
    sizes = np.array(cc.sizes, dtype=np.int64)
    chibar = np.zeros((r, r), dtype=np.int64)
    degrees = np.zeros(r, dtype=np.int64)
    sqrt_cap = math.isqrt(G.order)
    inv_class_list = list(inverse_class)
    for row, W in enumerate(spaces):
        v = W[:, 0] % ell
        w = v * inv_mod(int(v[0]), ell) % ell
        terms = sizes % ell * w % ell * w[inv_class_list] % ell
        denom = int(np.sum(terms.astype(object)) % ell)
        d2 = G.order * inv_mod(denom, ell) % ell
        droot = sqrt_mod(d2, ell)
        d = min(droot, ell - droot)
        if d < 1 or d > sqrt_cap:
            raise ArithmeticError("lifted degree out of range")
        degrees[row] = d
        chibar[row] = d * w[inv_class_list] % ell
    if int(np.sum(degrees.astype(object) ** 2)) != G.order:
        raise ArithmeticError("degree squares do not sum to the group order")

    # lift values to C through eigenvalue multiplicities
    z = element_of_order(exponent, ell)
    values = np.zeros((r, r), dtype=np.complex128)
    for c in range(r):
        kg = class_orders[c]
        pcl = _power_classes_raw(G, cc, c, kg)
        zeta_inv = inv_mod(pow(z, exponent // kg, ell), ell)
        zi_pows = np.array(
            [pow(zeta_inv, j, ell) for j in range(kg)], dtype=np.int64
        )
        T = zi_pows[np.outer(np.arange(kg), np.arange(kg)) % kg]
        Vb = chibar[:, pcl]
        mults = matmul_mod(Vb, T, ell) * inv_mod(kg, ell) % ell
        if np.any(mults > degrees[:, None]):
            raise NonIntegralMultiplicity("lifted multiplicity exceeds the degree")
        roots_of_unity = np.exp(2j * np.pi * np.arange(kg) / kg)
        values[:, c] = mults.astype(np.float64) @ roots_of_unity

    order_key = sorted(
        range(r),
        key=lambda i: (degrees[i], tuple(np.round(values[i].real, 6)) + tuple(np.round(values[i].imag, 6))),
    )
    values = values[order_key]
    degrees = degrees[order_key]

    table = CharacterTable(
        group=G,
        classes=cc,
        class_orders=class_orders,
        inverse_class=inverse_class,
        degrees=tuple(int(d) for d in degrees),
        values=values,
        exponent=exponent,
        modulus=ell,
    )
    _check_orthogonality(table)
    return table


def _power_classes_raw(G: FiniteGroup, cc: ConjugacyClasses, c: int, kg: int) -> list[int]:
    g = cc.representatives[c]
    out = [0]
    cur = g
    for _ in range(kg - 1):
        out.append(int(cc.class_of[cur]))
        cur = G.mul(cur, g)
    return out


def _check_orthogonality(table: CharacterTable, tol: float = 1e-8) -> None:
    sizes = np.array(table.classes.sizes, dtype=np.float64)
    gram = (table.values * sizes) @ table.values.conj().T / table.group.order
    if np.max(np.abs(gram - np.eye(table.num_classes))) > tol:
        raise ArithmeticError("character rows fail orthogonality")


# ---------------------------------------------------------------------------
# eigenvalue multiplicities and the strict multiplicity window
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplicityProfile:
    """Multiplicities of the eigenvalues eps^j (eps a primitive k-th root) of one
    irreducible image of a group element, read off from character values."""

    element_index: int
    order: int  # k
    central_order: int  # order of g modulo the center
    degree: int
    multiplicities: tuple[int, ...]  # length k, indexed by the exponent j


def eigenvalue_multiplicities(
    table: CharacterTable, char_index: int, class_index: int, tol: float = 1e-6
) -> MultiplicityProfile:
    """Multiplicity of eps^j as an eigenvalue, via the cyclic-subgroup projection
    m_j = (1/k) sum_u chi(g^u) eps^{-ju}."""
    k = table.class_orders[class_index]
    chi_pow = table.values[char_index, table.power_classes(class_index)]
    j_u = np.outer(np.arange(k), np.arange(k))
    dft = np.exp(-2j * np.pi * j_u / k)
    raw = dft @ chi_pow / k
    if np.max(np.abs(raw.imag)) > tol or np.max(np.abs(raw.real - np.round(raw.real))) > tol:
        raise NonIntegralMultiplicity(
            f"multiplicities not integral for char {char_index}, class {class_index}"
        )
    mults = tuple(int(x) for x in np.round(raw.real))
    if any(m < 0 for m in mults) or sum(mults) != table.degrees[char_index]:
        raise NonIntegralMultiplicity("multiplicities do not sum to the degree")
    return MultiplicityProfile(
        element_index=table.classes.representatives[class_index],
        order=k,
        central_order=table.central_order(class_index),
        degree=table.degrees[char_index],
        multiplicities=mults,
    )


@dataclass(frozen=True)
class MultiplicityCheck:
    char_index: int
    class_index: int
    central_order: int
    status: str  # "ok" | "hypothesis_failed" | "vacuous"
    bounds_pass: bool | None
    lower: Fraction | None
    upper: Fraction | None
    multiplicities: tuple[int, ...]


@dataclass
class MultiplicityReport:
    alpha: Fraction
    entries: list[MultiplicityCheck]

    @property
    def checked(self) -> list[MultiplicityCheck]:
        return [e for e in self.entries if e.bounds_pass is not None]

    @property
    def all_pass(self) -> bool:
        return all(e.bounds_pass for e in self.checked)

    def count(self, status: str) -> int:
        return sum(1 for e in self.entries if e.status == status)


def max_character_ratio(table: CharacterTable):
    """max |chi(x)| / chi(1) over nonlinear chi and noncentral x, or None if
    every character is linear."""
    best = None
    where = (None, None)
    for i in table.nonlinear_characters():
        d = table.degrees[i]
        for c in table.noncentral_classes():
            ratio = abs(table.values[i, c]) / d
            if best is None or ratio > best:
                best, where = ratio, (i, c)
    if best is None:
        return None
    return float(best), where[0], where[1]


def check_multiplicity_bounds(table: CharacterTable, alpha) -> MultiplicityReport:
    """Strict window (1/k1 - alpha, 1/k1 + alpha) * degree for every eigenvalue
    multiplicity, per nonlinear character and noncentral class.

    The per-character hypothesis max |chi(x)|/chi(1) <= alpha over noncentral x
    is verified from the table first; failing rows are reported, not asserted.
    Windows containing all of [0, degree] are flagged vacuous.  Bound
    comparisons are exact rational arithmetic.
    """
    alpha = Fraction(alpha).limit_denominator(10**12) if not isinstance(alpha, Fraction) else alpha
    if not (0 < alpha < 1):
        raise ValueError("alpha must lie in (0, 1)")
    entries: list[MultiplicityCheck] = []
    noncentral = table.noncentral_classes()
    for i in table.nonlinear_characters():
        d = table.degrees[i]
        ratio_max = max(abs(table.values[i, c]) / d for c in noncentral) if noncentral else 0.0
        hypothesis_ok = ratio_max <= float(alpha) + 1e-9
        for c in noncentral:
            k1 = table.central_order(c)
            if not hypothesis_ok:
                entries.append(
                    MultiplicityCheck(i, c, k1, "hypothesis_failed", None, None, None, ())
                )
                continue
            prof = eigenvalue_multiplicities(table, i, c)
            lower = (Fraction(1, k1) - alpha) * d
            upper = (Fraction(1, k1) + alpha) * d
            vacuous = lower < 0 and upper > d
            ok = all(lower < m < upper for m in prof.multiplicities if m > 0)
            entries.append(
                MultiplicityCheck(
                    i,
                    c,
                    k1,
                    "vacuous" if vacuous else "ok",
                    ok,
                    lower,
                    upper,
                    prof.multiplicities,
                )
            )
    return MultiplicityReport(alpha=alpha, entries=entries)
