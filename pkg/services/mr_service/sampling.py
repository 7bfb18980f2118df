"""
Sampling homomorphisms G_w -> F(a, b) from both branches of the diagram,
and the free subgroup separability experiment for g = [b1, b2].

pi-type samples keep the twist w(a1, a2)^k factored: for the Ivanov word the
expanded b images run to millions of letters, so they are only built when a
caller asks for the full hom.
"""

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from services.ivanov_service.ivanov import evaluate_word, ivanov_word
from services.ivanov_service.suites import random_noncommuting_pair, random_word
from services.mr_service.factorizer import DoubleHom
from services.shared.config import config
from services.shared.logs import get_logger
from services.shared.models import SeparabilityReport
from services.subgroup_service.stallings import build
from services.words_service.parser import parse_word
from services.words_service.words import FreeWord, conjugate, power, substitute

logger = get_logger(__name__)

# exponents of the cyclic images on the eta branch
_ETA_EXPONENT = 3

# failing samples listed in a report
_REPORTED = 10


@dataclass(frozen=True)
class SampledHom:
    """
    family "eta": b_images are the images of b1, b2.
    family "pi": b_images are the untwisted images a1, a2 and the hom sends
    b_i to s a_i s^-1 with s = w(a1, a2)^k.
    """
    family: str
    a_images: Tuple[FreeWord, FreeWord]
    b_images: Tuple[FreeWord, FreeWord]
    k: Optional[int] = None
    w: Optional[FreeWord] = None

    def twist(self) -> FreeWord:
        if self.family != "pi":
            return self.a_images[0].alphabet.identity()
        return power(evaluate_word(self.w, self.a_images), self.k)

    @property
    def hom(self) -> DoubleHom:
        if self.family != "pi":
            return DoubleHom(*self.a_images, *self.b_images)
        s = self.twist()
        return DoubleHom(*self.a_images, *(conjugate(u, s) for u in self.b_images))

    def b_word_image(self, g: FreeWord) -> FreeWord:
        """phi(g) for g in b1, b2, up to the twist conjugation on the pi branch"""
        return substitute(g, self.b_images)


def _exponent(rng: np.random.Generator) -> int:
    while True:
        value = int(rng.integers(-_ETA_EXPONENT, _ETA_EXPONENT + 1))
        if value:
            return value


def _draw_eta(rng: np.random.Generator, max_len: int) -> SampledHom:
    c, d = random_word(rng, max_len), random_word(rng, max_len)
    a_images = (power(c, _exponent(rng)), power(c, _exponent(rng)))
    b_images = (power(d, _exponent(rng)), power(d, _exponent(rng)))
    return SampledHom("eta", a_images, b_images)


def _draw_pi(rng: np.random.Generator, max_len: int, w: FreeWord, k: int) -> SampledHom:
    a_images = random_noncommuting_pair(rng, max_len)
    return SampledHom("pi", a_images, a_images, k, w)


def sample_eta(rng: np.random.Generator, max_len: int) -> DoubleHom:
    return _draw_eta(rng, max_len).hom


def sample_pi(rng: np.random.Generator, max_len: int, w: FreeWord, k: int) -> DoubleHom:
    return _draw_pi(rng, max_len, w, k).hom


def sample_homs(w: Optional[FreeWord] = None, samples: int = 0, seed: Optional[int] = None,
                max_len: Optional[int] = None) -> Iterator[SampledHom]:
    """Even mixture of eta-type and pi-type homs, yielded one at a time; every sample satisfies the relator"""
    w = w if w is not None else ivanov_word()
    samples = samples or config.DEFAULT_SAMPLES
    seed = config.DEFAULT_SEED if seed is None else seed
    max_len = max_len or config.MR_MAX_LEN
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        if rng.random() < 0.5:
            yield _draw_eta(rng, max_len)
        else:
            k = int(rng.integers(-config.MR_K_RANGE, config.MR_K_RANGE + 1))
            yield _draw_pi(rng, max_len, w, k)
    logger.info(f"sampled {samples} homs (seed {seed})")


def separability_experiment(w: Optional[FreeWord] = None, g: Optional[FreeWord] = None,
                            samples: int = 0, seed: Optional[int] = None,
                            max_len: Optional[int] = None) -> SeparabilityReport:
    """
    Count the sampled phi with phi(g) outside phi(A) = <phi(a1), phi(a2)>.
    g is a word in b1, b2, written over a, b.

    On the pi branch phi(g) = s u s^-1 with s = w(a1, a2)^k inside phi(A),
    so phi(g) lies in phi(A) exactly when u does.
    """
    g = g if g is not None else parse_word("[a,b]")
    seed = config.DEFAULT_SEED if seed is None else seed
    counts = {"eta": 0, "pi": 0}
    members, separated, failed = 0, 0, []
    for item in sample_homs(w, samples, seed, max_len):
        counts[item.family] += 1
        image = item.b_word_image(g)
        subgroup = build([u for u in item.a_images if u.letters], g.alphabet)
        if subgroup.contains(image):
            members += 1
            continue
        separated += 1
        if len(failed) < _REPORTED:
            failed.append(f"{item.family}: {item.hom.record().model_dump_json()}")
    report = SeparabilityReport(
        g=g.text,
        samples=counts["eta"] + counts["pi"],
        seed=seed,
        eta_homs=counts["eta"],
        pi_homs=counts["pi"],
        members=members,
        separated=separated,
        failed_samples=failed,
    )
    log = logger.warning if separated else logger.info
    log(f"separability: {report.separated}/{report.samples} separated")
    return report
