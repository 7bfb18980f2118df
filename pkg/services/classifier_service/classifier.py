"""
Decision tree for the cyclic JSJ decomposition of the double G_w.

Order of the checks:
    1. proper power, then primitivity (the double is not one-ended)
    2. exact surface detection on the minimal Aut-orbit
    3. bounded basis search for the amalgam and HNN conditions
    4. no witness within bound: the double itself is the decomposition
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

from services.classifier_service import graph_of_groups as shapes
from services.classifier_service.double import DoubleGroup
from services.classifier_service.graph_of_groups import GraphOfGroups
from services.classifier_service.search import (
    AmalgamWitness,
    BasisSearch,
    HnnWitness,
    SearchBound,
)
from services.shared.errors import IdentityWordError, SearchExhaustedError
from services.shared.logs import get_logger
from services.whitehead_service.automorphisms import (
    RANK_TWO,
    AutChain,
    conjugation_chain,
)
from services.whitehead_service.orbits import Orbit, minimize, normal_form
from services.words_service.parser import parse_word
from services.words_service.words import FreeWord, cyclic_reduce, inverse, is_proper_power

logger = get_logger(__name__)

ORIENTABLE_GENUS_2 = ("abAB",)
NON_ORIENTABLE_GENUS_4 = ("aabb", "aaBB", "AAbb", "AABB", "abAb", "abaB")

SEARCH_VERDICTS = (
    "DoubleIsJsj", "Case1_QH3", "Case1_Moebius", "Case1_Rigid",
    "Case2_Rigid", "Case2_QH4", "Case3_Rigid", "Case3_QH4", "Case3_QH5",
)


@dataclass
class JsjClassification:
    verdict: str
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    chain: Optional[AutChain] = None
    basis: Optional[Tuple[FreeWord, FreeWord]] = None
    bounded: bool = False
    variant: Optional[str] = None
    representative: Optional[str] = None
    presentation: Optional[str] = None
    consumed: Optional[int] = None
    root: Optional[FreeWord] = None
    bound: Optional[SearchBound] = field(default=None, repr=False)

    @property
    def definitive(self) -> bool:
        return self.verdict != "Indeterminate"


@dataclass(frozen=True)
class OneEndedness:
    one_ended: bool
    root: FreeWord
    exponent: int
    primitive_root: bool


def one_endedness(w: FreeWord) -> OneEndedness:
    """G_w is one-ended iff w lies in no proper free factor, i.e. its root is not primitive"""
    if not w.letters:
        raise IdentityWordError("one-endedness is undefined for the identity")
    found = is_proper_power(w)
    root, exponent = found if found else (w, 1)
    minimal, _ = minimize(root)
    primitive = len(minimal) == 1
    return OneEndedness(not primitive, root, exponent, primitive)


def _primitive_basis(x: FreeWord) -> Tuple[AutChain, FreeWord]:
    """(chain, y) with chain(x) a single letter and {x, y} a basis"""
    _, chain = minimize(x)
    image = chain.apply(x)
    core, conjugator = cyclic_reduce(image)
    chain = chain.then(conjugation_chain(inverse(conjugator)))
    letter = core.letters[0]
    back = chain.inverse()
    a, b = RANK_TWO.generators()
    y = back.apply(b if abs(letter) == 1 else a)
    return chain, y


def check_preconditions(w: FreeWord) -> Optional[JsjClassification]:
    if not w.letters:
        raise IdentityWordError("the double along the identity is not defined")
    found = is_proper_power(w)
    if found:
        root, k = found
        logger.info(f"{w} is the power {k} of {root}")
        if not one_endedness(root).primitive_root:
            return JsjClassification("ProperPower", k=k, root=root)
        # x^k with x primitive: <y> * <x> *_{x^k} <x> * <y>
        chain, y = _primitive_basis(root)
        return JsjClassification("ProperPower", k=k, chain=chain, basis=(root, y), root=root)
    report = one_endedness(w)
    if not report.one_ended:
        chain, y = _primitive_basis(w)
        logger.info(f"{w} is primitive; the double splits freely")
        return JsjClassification("NotOneEnded", k=1, chain=chain, basis=(w, y), root=w)
    return None


@lru_cache(maxsize=None)
def _surface_table():
    table = []
    for genus, orientable, reps in ((2, True, ORIENTABLE_GENUS_2), (4, False, NON_ORIENTABLE_GENUS_4)):
        for text in reps:
            minimal, _ = minimize(parse_word(text))
            table.append((normal_form(minimal.letters), len(minimal), genus, orientable, text))
    return table


def detect_surface(w: FreeWord, orbit: Optional[Orbit] = None) -> Optional[JsjClassification]:
    orbit = orbit or Orbit(w)
    for form, length, genus, orientable, text in _surface_table():
        if length != orbit.length or form not in orbit:
            continue
        chain = orbit.nodes[form].chain
        verdict = "SurfaceOrientableGenus2" if orientable else "SurfaceNonOrientableGenus4"
        logger.info(f"{w} is Aut-equivalent to {text}")
        return JsjClassification(verdict, chain=chain, basis=chain.inverse().images,
                                 representative=text)
    return None


def _amalgam_only(w: FreeWord, found: AmalgamWitness) -> Tuple[JsjClassification, GraphOfGroups]:
    x, y = found.basis
    n, m = found.n, found.m
    base = dict(n=n, m=m, chain=found.chain, basis=found.basis, bounded=True,
                presentation=found.transformed.text)
    if found.conjugate_form:
        if n > 2 and m > 2:
            return JsjClassification("Case1_QH3", **base), shapes.qh3(x, y, n, m)
        # n = m = 2 is the non-orientable genus 4 surface, caught before the search
        assert not (n == 2 and m == 2), "x^2 y^2 reached the basis search"
        return JsjClassification("Case1_Moebius", **base), shapes.moebius(x, y, n, m)
    variant = "two-edge" if m else "one-edge"
    return (JsjClassification("Case1_Rigid", variant=variant, **base),
            shapes.amalgam_rigid(x, y, n, m, w))


def _hnn_only(w: FreeWord, found: HnnWitness) -> Tuple[JsjClassification, GraphOfGroups]:
    x, y = found.basis
    m, n = found.m, found.n
    base = dict(n=n, m=m, chain=found.chain, basis=found.basis, bounded=True,
                presentation=found.transformed.text)
    if found.conjugate_form:
        return JsjClassification("Case2_QH4", **base), shapes.qh4(x, y, m, n)
    if m == n == 1:
        variant = "0"
    elif m == 1:
        variant = "1"
    else:
        variant = "2"
    return (JsjClassification("Case2_Rigid", variant=variant, **base),
            shapes.hnn_rigid(x, y, m, n, w))


def _both(w: FreeWord, found: HnnWitness) -> Tuple[JsjClassification, GraphOfGroups]:
    x, y = found.basis
    m, n, k = found.m, found.n, found.k
    base = dict(n=n, m=m, k=k, chain=found.chain, basis=found.basis, bounded=True,
                presentation=found.transformed.text)
    if found.conjugate_form:
        if 1 < k < min(m, n):
            return JsjClassification("Case3_QH5", **base), shapes.qh5(x, y, m, n, k)
        return JsjClassification("Case3_QH4", **base), shapes.qh4(x, y, m, n)
    if k == 1:
        # only reached when the bounded search misses the refining witness
        logger.warning(f"{w}: both witnesses with gcd 1; emitting the unrefined HNN shape")
        return (JsjClassification("Case3_Rigid", variant="0", **base),
                shapes.hnn_rigid(x, y, m, n, w))
    if k == min(m, n):
        return (JsjClassification("Case3_Rigid", variant="1", **base),
                shapes.root_loop(x, y, m, n, w))
    return (JsjClassification("Case3_Rigid", variant="2", **base),
            shapes.root_pulled(x, y, m, n, k, w))


def classify(w: FreeWord, bound: Optional[SearchBound] = None
             ) -> Tuple[JsjClassification, Optional[GraphOfGroups]]:
    double = DoubleGroup.of(w)
    bound = bound or SearchBound()

    early = check_preconditions(w)
    if early is not None:
        if early.basis is None:
            graph = shapes.double_edge(double)
        else:
            graph = shapes.free_decomposition(early.basis[0], early.basis[1], early.k)
        return early, graph.validate()

    try:
        orbit = Orbit(w, bound.node_cap)
        surface = detect_surface(w, orbit)
        if surface is not None:
            genus = 2 if surface.verdict == "SurfaceOrientableGenus2" else 4
            return surface, shapes.surface(surface.verdict == "SurfaceOrientableGenus2", genus).validate()
        search = BasisSearch(w, bound, orbit)
    except SearchExhaustedError as e:
        logger.warning(f"search exhausted after {e.consumed} nodes; no verdict for {w}")
        return JsjClassification("Indeterminate", bounded=True, consumed=e.consumed, bound=bound), None

    amalgam, hnn = search.amalgam(), search.hnn()
    logger.info(f"amalgam witness: {amalgam is not None}, HNN witness: {hnn is not None}")
    if amalgam and hnn:
        result, graph = _both(w, hnn)
    elif amalgam:
        result, graph = _amalgam_only(w, amalgam)
    elif hnn:
        result, graph = _hnn_only(w, hnn)
    else:
        result = JsjClassification("DoubleIsJsj", bounded=True)
        graph = shapes.double_edge(double)
    result.bound = bound
    result.consumed = search.consumed
    logger.info(f"{w}: {result.verdict} (n={result.n}, m={result.m}, k={result.k}, "
                f"variant={result.variant}, presentation={result.presentation})")
    return result, graph.validate()
