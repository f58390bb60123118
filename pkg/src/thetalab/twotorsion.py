"""Two-torsion of hyperelliptic Jacobians as even subsets of marked points.

A genus-g hyperelliptic curve has 2g+2 branch points, indexed 1..2g+2.
Two-torsion classes of the Jacobian are even-cardinality subsets modulo
complement, added by symmetric difference; the Weil pairing of two classes
is the parity of the intersection of representatives.  Canonical
representative: the smaller subset, with lexicographic tie-break at
cardinality g+1.

On top of the group structure this module classifies Klein (Z2 x Z2)
subgroups and their (Z2 x Z2)-coverings: isotropy under the pairing,
hyperellipticity of the covering curve, the distribution of Weierstrass
points in an unramified double cover, and the existence of isotropic
Klein subgroups inside every Z2^3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .errors import (
    Degenerate,
    GenusMismatch,
    NotWeightTwo,
    OutOfRange,
    TooLarge,
    ZeroClass,
)


@dataclass(frozen=True)
class TwoTorsionClass:
    genus: int
    members: frozenset[int]

    def __post_init__(self):
        if self.genus < 1:
            raise OutOfRange(f"genus {self.genus} < 1")
        n = 2 * self.genus + 2
        members = frozenset(self.members)
        if not all(isinstance(i, int) and 1 <= i <= n for i in members):
            raise OutOfRange(f"members {sorted(members)} not within 1..{n}")
        if len(members) % 2:
            raise OutOfRange(f"odd cardinality {len(members)}")
        object.__setattr__(self, "members", _canonical(self.genus, members))

    @classmethod
    def zero(cls, genus: int) -> "TwoTorsionClass":
        return cls(genus, frozenset())

    @classmethod
    def from_members(cls, genus: int, members) -> "TwoTorsionClass":
        return cls(genus, frozenset(members))

    @classmethod
    def from_pair(cls, genus: int, i: int, j: int) -> "TwoTorsionClass":
        """The difference of the branch points i and j."""
        if i == j:
            raise OutOfRange(f"pair indices must differ, got {i}, {j}")
        return cls(genus, frozenset((i, j)))

    def __add__(self, other: "TwoTorsionClass") -> "TwoTorsionClass":
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")
        return TwoTorsionClass(self.genus, self.members ^ other.members)

    @property
    def weight(self) -> int:
        return len(self.members)

    def is_zero(self) -> bool:
        return not self.members

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __repr__(self):
        return f"TwoTorsionClass(g={self.genus}, {set(self.sorted_members()) or '{}'})"


def _canonical(genus: int, members: frozenset[int]) -> frozenset[int]:
    comp = frozenset(range(1, 2 * genus + 3)) - members
    if len(members) < len(comp):
        return members
    if len(comp) < len(members):
        return comp
    return members if tuple(sorted(members)) < tuple(sorted(comp)) else comp


def weil(a: TwoTorsionClass, b: TwoTorsionClass) -> int:
    """Weil pairing: parity of |S intersect T| (well defined mod complement)."""
    if a.genus != b.genus:
        raise GenusMismatch(f"genus {a.genus} vs {b.genus}")
    return len(a.members & b.members) % 2


def all_classes(genus: int) -> list[TwoTorsionClass]:
    """All 2^(2g) two-torsion classes, sorted by weight then members."""
    n = 2 * genus + 2
    out = []
    for k in range(0, genus + 2, 2):
        for s in itertools.combinations(range(1, n + 1), k):
            cls = TwoTorsionClass(genus, frozenset(s))
            if cls.sorted_members() == s:
                out.append(cls)
    # odd genus: weight g+1 subsets appear once per complement pair, and the
    # canonical filter above already kept exactly one of the two
    out.sort(key=lambda c: (c.weight, c.sorted_members()))
    return out


def nonzero_classes(genus: int) -> list[TwoTorsionClass]:
    return [c for c in all_classes(genus) if not c.is_zero()]


def is_weierstrass_difference(eta: TwoTorsionClass) -> bool:
    """True iff the class is the difference of two branch points."""
    return eta.weight == 2


def double_cover_is_hyperelliptic(eta: TwoTorsionClass) -> bool:
    """The unramified double cover attached to eta is hyperelliptic exactly
    when eta is a difference of two branch points."""
    if eta.is_zero():
        raise ZeroClass("the trivial class defines a split, not a connected, cover")
    return is_weierstrass_difference(eta)


# ---------------------------------------------------------------------------
# Klein subgroups


class KleinSubgroup:
    """Subgroup {0, eta1, eta2, eta1+eta2} of the two-torsion group."""

    def __init__(self, eta1: TwoTorsionClass, eta2: TwoTorsionClass):
        if eta1.genus != eta2.genus:
            raise GenusMismatch(f"genus {eta1.genus} vs {eta2.genus}")
        if eta1.is_zero() or eta2.is_zero():
            raise ZeroClass("Klein subgroup generators must be nonzero")
        if eta1 == eta2:
            raise Degenerate("generators coincide; the subgroup is cyclic")
        self.eta1 = eta1
        self.eta2 = eta2
        self.genus = eta1.genus

    def elements(self) -> frozenset[TwoTorsionClass]:
        return frozenset(
            (TwoTorsionClass.zero(self.genus), self.eta1, self.eta2, self.eta1 + self.eta2)
        )

    def nonzero_elements(self) -> tuple[TwoTorsionClass, ...]:
        return tuple(
            sorted(
                (self.eta1, self.eta2, self.eta1 + self.eta2),
                key=lambda c: (c.weight, c.sorted_members()),
            )
        )

    def is_isotropic(self) -> bool:
        return weil(self.eta1, self.eta2) == 0

    def __eq__(self, other):
        return isinstance(other, KleinSubgroup) and self.elements() == other.elements()

    def __hash__(self):
        return hash((self.genus, self.elements()))

    def __repr__(self):
        e = [set(c.sorted_members()) or "{}" for c in self.nonzero_elements()]
        return f"KleinSubgroup(g={self.genus}, {e[0]}, {e[1]}, {e[2]})"


class CoverClass(Enum):
    HYPERELLIPTIC = "Hyperelliptic"
    NOT_HYPERELLIPTIC = "NotHyperelliptic"
    UNDETERMINED = "Undetermined"


def classify_klein_cover(G: KleinSubgroup) -> CoverClass:
    """Hyperellipticity of the connected (Z2 x Z2)-covering defined by G.

    Non-isotropic groups whose three nonzero classes are all differences
    of branch points give hyperelliptic coverings; isotropic groups never
    do.  Non-isotropic groups with a heavier generator (possible from
    genus 3 on) are left undetermined.
    """
    if G.is_isotropic():
        return CoverClass.NOT_HYPERELLIPTIC
    if all(c.weight == 2 for c in G.nonzero_elements()):
        return CoverClass.HYPERELLIPTIC
    return CoverClass.UNDETERMINED


@dataclass
class KleinCensus:
    genus: int
    total: int
    isotropic: int
    non_isotropic: int
    hyperelliptic: int
    undetermined: int
    groups: list[KleinSubgroup]


_ENUM_GENUS_CAP = 4


def enumerate_klein(genus: int) -> KleinCensus:
    """Census of all Klein subgroups (deduplicated); genus capped at 4."""
    if genus > _ENUM_GENUS_CAP:
        raise TooLarge(f"genus {genus} > {_ENUM_GENUS_CAP}: {4**genus} classes")
    nz = nonzero_classes(genus)
    seen: dict[frozenset, KleinSubgroup] = {}
    for a, b in itertools.combinations(nz, 2):
        G = KleinSubgroup(a, b)
        seen.setdefault(G.elements(), G)
    groups = list(seen.values())
    iso = sum(1 for G in groups if G.is_isotropic())
    kinds = [classify_klein_cover(G) for G in groups]
    return KleinCensus(
        genus=genus,
        total=len(groups),
        isotropic=iso,
        non_isotropic=len(groups) - iso,
        hyperelliptic=sum(1 for k in kinds if k is CoverClass.HYPERELLIPTIC),
        undetermined=sum(1 for k in kinds if k is CoverClass.UNDETERMINED),
        groups=groups,
    )


# ---------------------------------------------------------------------------
# orthogonal complements


def perp_basis(G: KleinSubgroup) -> list[TwoTorsionClass]:
    """Basis of the (2g-2)-dimensional orthogonal complement of G under
    the Weil pairing, by greedy extraction from the full class list."""
    if G.genus > 6:
        raise TooLarge(f"genus {G.genus} enumeration not supported")
    basis: list[TwoTorsionClass] = []
    span = {TwoTorsionClass.zero(G.genus)}
    for c in nonzero_classes(G.genus):
        if weil(c, G.eta1) == 0 and weil(c, G.eta2) == 0 and c not in span:
            basis.append(c)
            span |= {c + s for s in span}
    return basis


def orthogonal_complement(G: KleinSubgroup) -> KleinSubgroup:
    """The complement of a Klein subgroup is again a Klein subgroup only in
    genus 2, where dim = 2g - 2 = 2."""
    if G.genus != 2:
        raise GenusMismatch(
            f"complement has dimension {2 * G.genus - 2} > 2 in genus {G.genus}"
        )
    b = perp_basis(G)
    return KleinSubgroup(b[0], b[1])


# ---------------------------------------------------------------------------
# covers


def etale_cover_genus(genus: int, degree: int) -> int:
    """Genus of a connected unramified degree-n cover of a genus-g curve."""
    if genus < 0 or degree < 1:
        raise OutOfRange(f"genus {genus}, degree {degree}")
    return degree * (genus - 1) + 1


@dataclass
class CoveringDatum:
    """Weierstrass bookkeeping for the unramified double cover attached to
    a difference of branch points eta = [i - j].

    The cover is hyperelliptic of genus 2g-1; every branch point k outside
    {i, j} lifts to two Weierstrass points of the cover, while the fibres
    over i and j consist of points fixed by the composite of the lifted
    hyperelliptic involution with the deck involution.
    """

    eta: TwoTorsionClass
    base_genus: int
    cover_genus: int
    weierstrass_fibres: dict[int, tuple[str, str]]
    composite_fixed_fibres: dict[int, tuple[str, str]]

    def weierstrass_count(self) -> int:
        return 2 * len(self.weierstrass_fibres)


def covering_weierstrass_distribution(eta: TwoTorsionClass) -> CoveringDatum:
    if eta.is_zero():
        raise ZeroClass("need a nonzero class")
    if eta.weight != 2:
        raise NotWeightTwo(f"class has weight {eta.weight}")
    g = eta.genus
    i, j = eta.sorted_members()
    others = [k for k in range(1, 2 * g + 3) if k not in (i, j)]
    return CoveringDatum(
        eta=eta,
        base_genus=g,
        cover_genus=2 * g - 1,
        weierstrass_fibres={k: (f"{k}+", f"{k}-") for k in others},
        composite_fixed_fibres={k: (f"{k}+", f"{k}-") for k in (i, j)},
    )


# ---------------------------------------------------------------------------
# Z2^3 subgroups


@dataclass
class Z23Report:
    genus: int
    n_subgroups: int
    n_with_isotropic_klein: int
    witnesses: list[tuple[tuple[TwoTorsionClass, ...], KleinSubgroup]]

    @property
    def all_contain(self) -> bool:
        return self.n_with_isotropic_klein == self.n_subgroups


_Z23_GENUS_CAP = 3


def z23_contains_isotropic(genus: int, keep_witnesses: int = 3) -> Z23Report:
    """Check that every Z2^3 subgroup of the two-torsion group contains an
    isotropic Klein subgroup (restriction of an alternating form to an
    odd-dimensional space has a nonzero radical)."""
    if genus > _Z23_GENUS_CAP:
        raise TooLarge(f"genus {genus} > {_Z23_GENUS_CAP}")
    nz = nonzero_classes(genus)
    zero = TwoTorsionClass.zero(genus)
    seen: set[frozenset] = set()
    found = 0
    witnesses = []
    for a, b, c in itertools.combinations(nz, 3):
        if c in (a, b, a + b):
            continue
        span = frozenset(
            (zero, a, b, c, a + b, a + c, b + c, a + b + c)
        )
        if span in seen:
            continue
        seen.add(span)
        witness = None
        for x, y in itertools.combinations(sorted(span - {zero},
                                                  key=lambda t: (t.weight, t.sorted_members())), 2):
            if weil(x, y) == 0:
                witness = KleinSubgroup(x, y)
                break
        if witness is not None:
            found += 1
            if len(witnesses) < keep_witnesses:
                witnesses.append(((a, b, c), witness))
    return Z23Report(genus, len(seen), found, witnesses)
