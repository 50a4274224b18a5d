"""
Signatures of generalized strata: parsing, validation, dimension,
one-dimensional family classification and ramification profiles.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional
import re

from .models import Family, ParseError, ValidationError


_GENUS_PREFIX = re.compile(r"^g=(\d+);")
_NUMBER_LIST = re.compile(r"^-?\d+(,-?\d+)*$")


def zero_label(i: int) -> str:
    """Label of the zero with 0-based index i."""
    return f"z{i + 1}"


def pole_label(j: int) -> str:
    """Label of the pole with 0-based index j."""
    return f"p{j + 1}"


def label_key(label: str) -> tuple[int, int]:
    """Natural sort key for marked-point labels: zeros before poles, then by index."""
    kind = {"z": 0, "p": 1}.get(label[0], 2)
    return (kind, int(label[1:]))


def label_index(label: str) -> int:
    """0-based index of a zero or pole label."""
    return int(label[1:]) - 1


@dataclass(frozen=True)
class Signature:
    """
    A stratum with residue conditions.

    Pole orders are stored as positive integers; blocks hold 0-based pole
    indices in textual order.
    """
    zeros: tuple[int, ...]
    poles: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    genus: int = 0

    @property
    def m(self) -> int:
        return len(self.zeros)

    @property
    def n(self) -> int:
        return len(self.poles)

    @property
    def r(self) -> int:
        return len(self.blocks)

    @property
    def degree(self) -> int:
        return sum(self.zeros) - sum(self.poles)

    @cached_property
    def residueless(self) -> tuple[int, ...]:
        """Poles forming singleton blocks, in signature order."""
        return tuple(sorted(b[0] for b in self.blocks if len(b) == 1))

    @cached_property
    def multi_blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks with at least two poles, in textual order."""
        return tuple(b for b in self.blocks if len(b) > 1)

    def block_of(self, j: int) -> tuple[int, ...]:
        for block in self.blocks:
            if j in block:
                return block
        raise KeyError(j)

    def render(self) -> str:
        """Canonical text form; parse_signature(render()) == self."""
        parts = [",".join(str(a) for a in self.zeros)]
        for block in self.blocks:
            parts.append(",".join(f"-{self.poles[j]}" for j in block))
        text = " | ".join(parts)
        if self.genus:
            text = f"g={self.genus}; {text}"
        return text

    def __str__(self) -> str:
        return self.render()


def parse_signature(text: str) -> Signature:
    """
    Parse a signature such as "1,1 | -2 | -1,-1".

    Args:
        text: Signature text, optionally prefixed by "g=<int>;"

    Returns:
        The validated Signature

    Raises:
        ParseError: on malformed text
        ValidationError: on degree or block violations
    """
    compact = re.sub(r"\s+", "", text)
    genus = 0
    prefix = _GENUS_PREFIX.match(compact)
    if prefix:
        genus = int(prefix.group(1))
        compact = compact[prefix.end():]

    parts = compact.split("|")
    if len(parts) < 2:
        raise ParseError(f"expected zeros and at least one pole block: {text!r}")

    zeros_text = parts[0]
    if not zeros_text or not _NUMBER_LIST.match(zeros_text):
        raise ParseError(f"malformed zero list {zeros_text!r} in {text!r}")
    zeros = tuple(int(x) for x in zeros_text.split(","))
    if any(a < 0 for a in zeros):
        raise ParseError(f"zero orders must be non-negative: {text!r}")

    poles: list[int] = []
    blocks: list[tuple[int, ...]] = []
    for part in parts[1:]:
        if not part:
            raise ValidationError(f"empty residue block in {text!r}")
        if not _NUMBER_LIST.match(part):
            raise ParseError(f"malformed pole block {part!r} in {text!r}")
        values = [int(x) for x in part.split(",")]
        if any(v >= 0 for v in values):
            raise ParseError(f"pole orders must be negative: {part!r}")
        start = len(poles)
        poles.extend(-v for v in values)
        blocks.append(tuple(range(start, len(poles))))

    sig = Signature(zeros=zeros, poles=tuple(poles), blocks=tuple(blocks), genus=genus)
    validate_signature(sig)
    return sig


def validate_signature(sig: Signature) -> None:
    """Raise ValidationError unless sig satisfies every signature invariant."""
    if sig.genus < 0:
        raise ValidationError("genus must be non-negative")
    if sig.m < 1:
        raise ValidationError("at least one zero is required")
    if any(a < 0 for a in sig.zeros):
        raise ValidationError("zero orders must be non-negative")
    if not sig.poles or any(b < 1 for b in sig.poles):
        raise ValidationError("pole orders must be positive")
    seen: list[int] = []
    for block in sig.blocks:
        if not block:
            raise ValidationError("empty residue block")
        if len(block) == 1 and sig.poles[block[0]] == 1:
            raise ValidationError(
                f"lone simple pole {pole_label(block[0])} cannot be residueless"
            )
        seen.extend(block)
    if sorted(seen) != list(range(sig.n)):
        raise ValidationError("residue blocks must partition the poles")
    if sig.degree != 2 * sig.genus - 2:
        raise ValidationError(
            f"degree {sig.degree} does not match 2g-2 = {2 * sig.genus - 2} for {sig.render()}"
        )


def dimension(sig: Signature) -> int:
    """Projectivized dimension 2g + m + n - r - 2."""
    return 2 * sig.genus + sig.m + sig.n - sig.r - 2


def classify_one_dim(sig: Signature) -> Family:
    """Family of a one-dimensional signature, or NOT_ONE_DIMENSIONAL."""
    if dimension(sig) != 1:
        return Family.NOT_ONE_DIMENSIONAL
    sizes = sorted(len(b) for b in sig.multi_blocks)
    if sig.genus == 1:
        return Family.E
    if sig.m == 3 and not sizes:
        return Family.A
    if sig.m == 2 and sizes == [2]:
        return Family.B
    if sig.m == 1 and sizes == [3]:
        return Family.C
    if sig.m == 1 and sizes == [2, 2]:
        return Family.D
    return Family.NOT_ONE_DIMENSIONAL


# ==================== Ramification profiles ====================

@dataclass(frozen=True)
class RamificationProfile:
    """An involution on pole indices (0-based images)."""
    involution: tuple[int, ...]

    @property
    def fixed(self) -> tuple[int, ...]:
        return tuple(j for j, k in enumerate(self.involution) if j == k)

    @property
    def swaps(self) -> tuple[tuple[int, int], ...]:
        return tuple((j, k) for j, k in enumerate(self.involution) if j < k)

    def to_dict(self) -> dict:
        return {
            "fixed": [pole_label(j) for j in self.fixed],
            "swaps": [[pole_label(j), pole_label(k)] for j, k in self.swaps],
        }

    def __str__(self) -> str:
        parts = [f"{pole_label(j)}<->{pole_label(k)}" for j, k in self.swaps]
        parts += [f"{pole_label(j)} fixed" for j in self.fixed]
        return ", ".join(parts) or "trivial"


def zeros_admit_involution(sig: Signature) -> bool:
    """A unique zero, or exactly two zeros of equal order."""
    return sig.m == 1 or (sig.m == 2 and sig.zeros[0] == sig.zeros[1])


def profile_conditions_hold(sig: Signature, involution: tuple[int, ...]) -> bool:
    """Check the three profile conditions for a candidate involution."""
    if len(involution) != sig.n:
        return False
    if any(involution[involution[j]] != j for j in range(sig.n)):
        return False
    fixed = [j for j in range(sig.n) if involution[j] == j]
    limit = 2 * sig.genus + (1 if sig.m == 1 else 2)
    if len(fixed) > limit:
        return False
    if any(sig.poles[j] % 2 for j in fixed):
        return False
    block_set = {frozenset(b) for b in sig.blocks}
    for j in range(sig.n):
        k = involution[j]
        if sig.poles[k] != sig.poles[j]:
            return False
        if j != k and frozenset((j, k)) in block_set:
            continue
        if frozenset((j,)) in block_set and frozenset((k,)) in block_set:
            continue
        return False
    return True


def _involutions(poles: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All order-preserving involutions on range(len(poles))."""
    image: list[Optional[int]] = [None] * len(poles)

    def extend(j: int) -> Iterator[tuple[int, ...]]:
        while j < len(poles) and image[j] is not None:
            j += 1
        if j == len(poles):
            yield tuple(image)  # type: ignore[arg-type]
            return
        image[j] = j
        yield from extend(j + 1)
        for k in range(j + 1, len(poles)):
            if image[k] is None and poles[k] == poles[j]:
                image[j], image[k] = k, j
                yield from extend(j + 1)
                image[k] = None
        image[j] = None

    yield from extend(0)


def ramification_profiles(sig: Signature) -> list[RamificationProfile]:
    """All ramification profiles of sig, each exactly once."""
    if not zeros_admit_involution(sig):
        return []
    return [
        RamificationProfile(involution)
        for involution in _involutions(sig.poles)
        if profile_conditions_hold(sig, involution)
    ]
