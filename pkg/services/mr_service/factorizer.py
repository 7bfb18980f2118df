"""
Factorization of homomorphisms phi: G_w -> F(a, b), w an Ivanov word.

Either w is killed, and phi factors through the projection onto Z^2 * Z^2
(both sides have cyclic image), or phi restricted to the b side is phi
restricted to the a side followed by conjugation with w_phi^k, which is
the canonical retraction after a power of the Dehn twist along <w>.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from services.ivanov_service.ivanov import conjugating_power, evaluate_word, ivanov_word
from services.shared.config import config
from services.shared.errors import RelatorViolationError
from services.shared.logs import get_logger
from services.shared.models import FactorizationRecord, HomRecord
from services.whitehead_service.automorphisms import RANK_TWO
from services.words_service.parser import parse_word
from services.words_service.words import (
    FreeWord,
    commutator,
    conjugate,
    is_proper_power,
    power,
    power_exponent,
)

logger = get_logger(__name__)


def _image(text: str) -> FreeWord:
    # the identity renders as the empty string
    return parse_word(text) if text.strip() else RANK_TWO.identity()


@dataclass(frozen=True)
class DoubleHom:
    a1: FreeWord
    a2: FreeWord
    b1: FreeWord
    b2: FreeWord

    @property
    def a_images(self) -> Tuple[FreeWord, FreeWord]:
        return self.a1, self.a2

    @property
    def b_images(self) -> Tuple[FreeWord, FreeWord]:
        return self.b1, self.b2

    def images(self) -> Tuple[FreeWord, ...]:
        return self.a1, self.a2, self.b1, self.b2

    def record(self) -> HomRecord:
        return HomRecord(a1=self.a1.text, a2=self.a2.text, b1=self.b1.text, b2=self.b2.text)

    @classmethod
    def from_record(cls, record: HomRecord) -> "DoubleHom":
        return cls(*(_image(text) for text in (record.a1, record.a2, record.b1, record.b2)))


@dataclass(frozen=True)
class EtaFactor:
    """Both sides cyclic: a_i -> roots[0]^exponents[i], b_i -> roots[1]^exponents[2 + i]"""
    roots: Tuple[FreeWord, FreeWord]
    exponents: Tuple[int, int, int, int]

    variant = "eta"


@dataclass(frozen=True)
class PiFactor:
    """b_i -> w_phi^k a_i w_phi^-k"""
    k: int
    w_phi: FreeWord

    variant = "pi"


@dataclass(frozen=True)
class Unfactored:
    reason: str

    variant = "unfactored"


Factorization = Union[EtaFactor, PiFactor, Unfactored]


def validate(h: DoubleHom, w: Optional[FreeWord] = None) -> bool:
    w = w if w is not None else ivanov_word()
    return evaluate_word(w, h.a_images) == evaluate_word(w, h.b_images)


def _cyclic_side(u: FreeWord, v: FreeWord) -> Optional[Tuple[FreeWord, int, int]]:
    """(root, p, q) with u = root^p and v = root^q, or None when u and v do not commute"""
    if commutator(u, v).letters:
        return None
    seed = u if u.letters else v
    if not seed.letters:
        return RANK_TWO.identity(), 0, 0
    found = is_proper_power(seed)
    root = found[0] if found else seed
    p, q = power_exponent(u, root), power_exponent(v, root)
    if p is None or q is None:
        return None
    return root, p, q


def factor(h: DoubleHom, w: Optional[FreeWord] = None, k_bound: Optional[int] = None) -> Factorization:
    w = w if w is not None else ivanov_word()
    k_bound = config.MR_K_BOUND if k_bound is None else k_bound
    w_phi = evaluate_word(w, h.a_images)
    if w_phi != evaluate_word(w, h.b_images):
        raise RelatorViolationError("the images do not satisfy w(a1, a2) = w(b1, b2)")

    if not w_phi.letters:
        a_side, b_side = _cyclic_side(h.a1, h.a2), _cyclic_side(h.b1, h.b2)
        if a_side is None or b_side is None:
            return Unfactored("w is killed but a side has non-cyclic image")
        return EtaFactor((a_side[0], b_side[0]), (a_side[1], a_side[2], b_side[1], b_side[2]))

    k = conjugating_power(h.a_images, h.b_images, w_phi, k_bound)
    if k is None:
        logger.warning(f"no twist exponent with |k| <= {k_bound}")
        return Unfactored(f"no k with |k| <= {k_bound}")
    return PiFactor(k, w_phi)


def recompose(f: Factorization, h: DoubleHom) -> DoubleHom:
    """Rebuild phi along the diagram path of the factorization"""
    if isinstance(f, EtaFactor):
        ra, rb = f.roots
        p1, p2, q1, q2 = f.exponents
        return DoubleHom(power(ra, p1), power(ra, p2), power(rb, q1), power(rb, q2))
    if isinstance(f, PiFactor):
        s = power(f.w_phi, f.k)
        return DoubleHom(h.a1, h.a2, conjugate(h.a1, s), conjugate(h.a2, s))
    raise RelatorViolationError(f"cannot recompose an unfactored hom: {f.reason}")


def target_conjugate(h: DoubleHom, g: FreeWord) -> DoubleHom:
    """Post-compose h with the inner automorphism x -> g x g^-1 of the target"""
    return DoubleHom(*(conjugate(u, g) for u in h.images()))


def factorization_record(h: DoubleHom, f: Factorization) -> FactorizationRecord:
    recomposed = not isinstance(f, Unfactored) and recompose(f, h) == h
    if isinstance(f, EtaFactor):
        return FactorizationRecord(hom=h.record(), variant=f.variant, recomposed=recomposed,
                                   roots=[r.text for r in f.roots], exponents=list(f.exponents))
    if isinstance(f, PiFactor):
        return FactorizationRecord(hom=h.record(), variant=f.variant, k=f.k, recomposed=recomposed)
    return FactorizationRecord(hom=h.record(), variant=f.variant, recomposed=False)
