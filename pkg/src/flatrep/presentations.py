"""Surface-group presentations, free-group words, evaluation and gradients.

Orientable surfaces use the standard one-relator presentation with
relator ``prod_j [a_j, b_j]``; non-orientable surfaces use the crosscap
form ``x_1^2 ... x_k^2``.  A connected sum of a genus-g surface with j
projective planes is normalized to ``k = 2g + j`` crosscaps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .unitary import Unitary, identity

ORIENTABLE = "orientable"
NONORIENTABLE = "nonorientable"


@dataclass(frozen=True)
class Word:
    """A word in free-group generators: letters are (index, sign) pairs."""

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for idx, sign in self.letters:
            if idx < 0:
                raise ValueError(f"generator index must be >= 0, got {idx}")
            if sign not in (1, -1):
                raise ValueError(f"exponent sign must be +-1, got {sign}")

    @classmethod
    def from_letters(cls, letters) -> "Word":
        return cls(tuple((int(i), int(s)) for i, s in letters))

    @classmethod
    def empty(cls) -> "Word":
        return cls(())

    @classmethod
    def generator(cls, index: int) -> "Word":
        return cls(((index, 1),))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((i, -s) for i, s in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def max_index(self) -> int:
        return max((i for i, _ in self.letters), default=-1)

    def to_json(self) -> list:
        return [[i, s] for i, s in self.letters]

    @classmethod
    def from_json(cls, data) -> "Word":
        return cls.from_letters(data)


def commutator(i: int, j: int) -> Word:
    return Word(((i, 1), (j, 1), (i, -1), (j, -1)))


@dataclass(frozen=True)
class SurfacePresentation:
    """One-relator presentation of the fundamental group of a closed surface."""

    kind: str
    genus: int | None
    crosscaps: int | None
    generator_count: int
    relator: Word
    aspherical: bool

    def descriptor(self) -> str:
        if self.kind == ORIENTABLE:
            return f"genus{self.genus}"
        return f"crosscap{self.crosscaps}"

    def to_json(self) -> dict:
        if self.kind == ORIENTABLE:
            return {"kind": ORIENTABLE, "g": self.genus}
        return {"kind": NONORIENTABLE, "k": self.crosscaps}

    @classmethod
    def from_json(cls, data: dict) -> "SurfacePresentation":
        if data["kind"] == ORIENTABLE:
            return make_orientable(data["g"])
        return make_nonorientable(data["k"])


def make_orientable(genus: int) -> SurfacePresentation:
    """Presentation of a genus-g orientable surface group, g >= 1."""
    if genus < 1:
        raise ValueError("orientable genus must be >= 1 (the sphere is excluded)")
    relator = Word.empty()
    for j in range(genus):
        relator = relator * commutator(2 * j, 2 * j + 1)
    return SurfacePresentation(
        kind=ORIENTABLE,
        genus=genus,
        crosscaps=None,
        generator_count=2 * genus,
        relator=relator,
        aspherical=True,
    )


def make_nonorientable(crosscaps: int) -> SurfacePresentation:
    """Presentation with k crosscaps, relator x_1^2 ... x_k^2, k >= 1.

    k = 1 (the projective plane) is constructible but flagged
    non-aspherical; table operations downstream refuse it.
    """
    if crosscaps < 1:
        raise ValueError("crosscap count must be >= 1")
    letters = []
    for i in range(crosscaps):
        letters += [(i, 1), (i, 1)]
    return SurfacePresentation(
        kind=NONORIENTABLE,
        genus=None,
        crosscaps=crosscaps,
        generator_count=crosscaps,
        relator=Word.from_letters(letters),
        aspherical=crosscaps != 1,
    )


def make_connected_sum(genus: int, projective_planes: int) -> SurfacePresentation:
    """Non-orientable connected sum of a genus-g surface with j >= 1 crosscaps.

    Normalized to the (2g + j)-crosscap presentation, which defines an
    isomorphic group.
    """
    if genus < 0:
        raise ValueError("genus must be >= 0")
    if projective_planes < 1:
        raise ValueError("need at least one projective-plane summand")
    return make_nonorientable(2 * genus + projective_planes)


def make_presentation(
    kind: str, *, genus: int | None = None, crosscaps: int | None = None
) -> SurfacePresentation:
    """Build a surface presentation from a descriptor."""
    if kind == ORIENTABLE:
        if genus is None:
            raise ValueError("orientable surfaces need a genus")
        return make_orientable(genus)
    if kind == NONORIENTABLE:
        if crosscaps is None:
            raise ValueError("non-orientable surfaces need a crosscap count")
        return make_nonorientable(crosscaps)
    raise ValueError(f"unknown surface kind {kind!r}")


def word_product(letters, mats: Sequence[np.ndarray]) -> np.ndarray:
    """Ordered left-to-right product of matrices per (index, sign) letters.

    Sign -1 contributes the conjugate transpose, which equals the inverse
    on unitary inputs.  Raw-array fast path shared with the lattice module.
    """
    if not mats:
        return np.zeros((0, 0), dtype=np.complex128)
    n = mats[0].shape[0]
    out = np.eye(n, dtype=np.complex128)
    for idx, sign in letters:
        x = mats[idx] if sign > 0 else mats[idx].conj().T
        out = out @ x
    return out


def evaluate_word(word: Word, images: Sequence[Unitary]) -> Unitary:
    """Evaluate a word on generator images; the empty word gives I."""
    mats = [u.mat for u in images]
    dims = {m.shape[0] for m in mats}
    if len(dims) > 1:
        raise ValueError(f"images have mixed dimensions {sorted(dims)}")
    if word.letters and word.max_index() >= len(images):
        raise IndexError(
            f"word references generator {word.max_index()} "
            f"but only {len(images)} images given"
        )
    if not mats:
        return identity(0)
    return Unitary(word_product(word.letters, mats), _checked=True)


def word_gradient(word: Word, images: Sequence[Unitary]) -> list[np.ndarray]:
    """Euclidean gradient of E = ||evaluate_word(word) - I||_F^2.

    One gradient matrix per generator image, assembled from the cyclic
    prefix/suffix factorizations of the word.  The convention is
    dE = Re tr(G^* dU), matching central finite differences of the
    ambient energy (inverse letters extended as conjugate transpose).
    """
    mats = [u.mat for u in images]
    dims = {m.shape[0] for m in mats}
    if len(dims) > 1:
        raise ValueError(f"images have mixed dimensions {sorted(dims)}")
    if word.letters and word.max_index() >= len(images):
        raise IndexError("word references a generator with no image")
    grads = multiword_gradients([word.letters], mats, len(mats))
    return grads


def multiword_energy(words, mats: Sequence[np.ndarray]) -> float:
    """Sum over words of ||product - I||_F^2."""
    total = 0.0
    if not mats:
        return total
    n = mats[0].shape[0]
    eye = np.eye(n, dtype=np.complex128)
    for letters in words:
        d = word_product(letters, mats) - eye
        total += float(np.vdot(d, d).real)
    return total


def multiword_gradients(words, mats: Sequence[np.ndarray], count: int) -> list[np.ndarray]:
    """Euclidean gradients of the summed word energy, one per matrix slot."""
    if not mats:
        return []
    n = mats[0].shape[0]
    eye = np.eye(n, dtype=np.complex128)
    grads = [np.zeros((n, n), dtype=np.complex128) for _ in range(count)]
    for letters in words:
        L = len(letters)
        if L == 0:
            continue
        xs = [mats[i] if s > 0 else mats[i].conj().T for i, s in letters]
        prefixes = [eye]
        for x in xs[:-1]:
            prefixes.append(prefixes[-1] @ x)
        suffixes = [eye] * (L + 1)
        for j in range(L - 1, -1, -1):
            suffixes[j] = xs[j] @ suffixes[j + 1]
        w = prefixes[-1] @ xs[-1]
        d = w - eye
        for j, (idx, sign) in enumerate(letters):
            p = prefixes[j]
            s = suffixes[j + 1]
            if sign > 0:
                grads[idx] += 2.0 * (p.conj().T @ d @ s.conj().T)
            else:
                grads[idx] += 2.0 * (s @ d.conj().T @ p)
    return grads
