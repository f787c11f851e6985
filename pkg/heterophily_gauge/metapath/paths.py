"""
Metapaths over a schema: typed step sequences that start and end at the
labeled target type.

Text forms:

- arrow form: ``paper <-writes- author -writes-> paper``
- compact form: ``~writes.writes`` (``~`` marks a reverse step; the start
  type is the target type)
"""

import re
from typing import List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..core.schema import Schema
from ..errors import MetapathSyntaxError, TypeMismatchError, UsageError

FORWARD = "forward"
REVERSE = "reverse"

_FORWARD_ARROW = re.compile(r"^-(.+)->$")
_REVERSE_ARROW = re.compile(r"^<-(.+)-$")


class MetapathStep(BaseModel):
    """One hop: a relation index traversed forward or in reverse."""

    model_config = ConfigDict(frozen=True)

    relation: int
    direction: Literal["forward", "reverse"] = FORWARD

    @property
    def is_reverse(self) -> bool:
        return self.direction == REVERSE

    def endpoints(self, schema: Schema) -> Tuple[str, str]:
        """Effective (src, dst) types; they swap for reverse steps."""
        rel = schema.relations[self.relation]
        return (rel.dst, rel.src) if self.is_reverse else (rel.src, rel.dst)

    def flipped(self) -> "MetapathStep":
        return MetapathStep(relation=self.relation, direction=FORWARD if self.is_reverse else REVERSE)

    def sort_key(self) -> Tuple[int, int]:
        return (self.relation, 1 if self.is_reverse else 0)


class Metapath(BaseModel):
    """
    A nonempty sequence of steps.

    ``canonical`` is set when this path is the lexicographically smaller of
    itself and its reversal.
    """

    model_config = ConfigDict(frozen=True)

    steps: Tuple[MetapathStep, ...]
    canonical: bool = False

    def __len__(self) -> int:
        return len(self.steps)

    def sort_key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(step.sort_key() for step in self.steps)

    def reversed(self) -> "Metapath":
        steps = tuple(step.flipped() for step in reversed(self.steps))
        return Metapath(steps=steps, canonical=_is_canonical(steps))

    def canonicalized(self) -> "Metapath":
        """Return the canonical representative of {self, reversal}."""
        rev = tuple(step.flipped() for step in reversed(self.steps))
        steps = min(self.steps, rev, key=lambda s: tuple(x.sort_key() for x in s))
        return Metapath(steps=steps, canonical=True)

    def same_steps(self, other: "Metapath") -> bool:
        return self.steps == other.steps

    def type_check(self, schema: Schema, target_type: Optional[str] = None) -> None:
        """
        Verify consecutive steps connect and, if given, both ends are the target type.

        Raises:
            TypeMismatchError: If the path does not type-check
        """
        if not self.steps:
            raise TypeMismatchError("a metapath needs at least one step")
        for step in self.steps:
            if not 0 <= step.relation < len(schema.relations):
                raise TypeMismatchError(f"metapath references unknown relation index {step.relation}")
        for i in range(len(self.steps) - 1):
            _, dst = self.steps[i].endpoints(schema)
            src, _ = self.steps[i + 1].endpoints(schema)
            if dst != src:
                raise TypeMismatchError(f"step {i} ends at '{dst}' but step {i + 1} starts at '{src}'")
        if target_type is not None:
            start, _ = self.steps[0].endpoints(schema)
            _, end = self.steps[-1].endpoints(schema)
            if start != target_type or end != target_type:
                raise TypeMismatchError(
                    f"metapath runs '{start}' -> '{end}' but must start and end at '{target_type}'"
                )

    def format(self, schema: Schema) -> str:
        """Arrow form, e.g. ``paper <-writes- author -writes-> paper``."""
        start, _ = self.steps[0].endpoints(schema)
        parts = [start]
        for step in self.steps:
            name = schema.relations[step.relation].name
            _, dst = step.endpoints(schema)
            parts.append(f"<-{name}-" if step.is_reverse else f"-{name}->")
            parts.append(dst)
        return " ".join(parts)

    def compact(self, schema: Schema) -> str:
        """Compact form, e.g. ``~writes.writes``."""
        return ".".join(
            ("~" if step.is_reverse else "") + schema.relations[step.relation].name for step in self.steps
        )


def _is_canonical(steps: Sequence[MetapathStep]) -> bool:
    rev = tuple(step.flipped() for step in reversed(steps))
    return tuple(s.sort_key() for s in steps) <= tuple(s.sort_key() for s in rev)


class MetapathSet(BaseModel):
    """Deduplicated canonical metapaths for one target type."""

    target_type: str
    max_length: int
    lengths: List[int]
    paths: List[Metapath]

    def __len__(self) -> int:
        return len(self.paths)

    def formatted(self, schema: Schema) -> List[str]:
        return [p.format(schema) for p in self.paths]


def enumerate_metapaths(
    schema: Schema,
    target_type: str,
    k: int = 2,
    lengths: Optional[Sequence[int]] = None,
) -> MetapathSet:
    """
    Enumerate all canonical target-to-target metapaths up to length k.

    Every relation may be traversed in either direction. Paths are reduced
    to one representative per reversal pair and ordered by length, then
    lexicographically by (relation index, direction) per step.

    Args:
        schema: The schema to walk
        target_type: Start and end node type
        k: Maximum length
        lengths: Exact lengths to keep (default: 1..k)

    Returns:
        The metapath set

    Raises:
        UnknownTypeError: If the target type is not in the schema
        UsageError: If k < 1 or a requested length exceeds k
    """
    schema.type_index(target_type)
    if k < 1:
        raise UsageError(f"metapath length bound must be >= 1, got {k}")
    wanted = sorted(set(lengths)) if lengths else list(range(1, k + 1))
    if any(length < 1 or length > k for length in wanted):
        raise UsageError(f"metapath lengths {wanted} must lie within 1..{k}")

    # All (step, next type) moves out of each type, in lexicographic step order
    moves = {t: [] for t in schema.node_types}
    for r, rel in enumerate(schema.relations):
        moves[rel.src].append((MetapathStep(relation=r, direction=FORWARD), rel.dst))
        moves[rel.dst].append((MetapathStep(relation=r, direction=REVERSE), rel.src))
    for t in moves:
        moves[t].sort(key=lambda move: move[0].sort_key())

    paths: List[Metapath] = []
    for length in wanted:
        frontier: List[Tuple[Tuple[MetapathStep, ...], str]] = [((), target_type)]
        for _ in range(length):
            frontier = [(steps + (step,), nxt) for steps, at in frontier for step, nxt in moves[at]]
        for steps, end in frontier:
            if end == target_type and _is_canonical(steps):
                paths.append(Metapath(steps=steps, canonical=True))

    return MetapathSet(target_type=target_type, max_length=k, lengths=wanted, paths=paths)


def _resolve(schema: Schema, name: str, at: str, reverse: bool, to: Optional[str], text: str) -> Tuple[MetapathStep, str]:
    candidates = []
    for r in schema.relations_named(name):
        rel = schema.relations[r]
        src, dst = (rel.dst, rel.src) if reverse else (rel.src, rel.dst)
        if src == at and (to is None or dst == to):
            candidates.append((MetapathStep(relation=r, direction=REVERSE if reverse else FORWARD), dst))
    if not candidates:
        arrow = f"~{name}" if reverse else name
        raise MetapathSyntaxError(f"{text!r}: no relation '{arrow}' leaves type '{at}'")
    if len(candidates) > 1:
        raise MetapathSyntaxError(f"{text!r}: relation '{name}' from '{at}' is ambiguous; use the arrow form")
    return candidates[0]


def parse_metapath(text: str, schema: Schema, target_type: Optional[str] = None) -> Metapath:
    """
    Parse the arrow or compact metapath syntax.

    Args:
        text: Metapath text
        schema: Schema to resolve relation names against
        target_type: Start type for the compact form (and end-type check for both)

    Returns:
        The metapath, with ``canonical`` set according to its orientation

    Raises:
        MetapathSyntaxError: On malformed text or unresolvable relations
        TypeMismatchError: If the endpoints are not the target type
    """
    text = text.strip()
    if not text:
        raise MetapathSyntaxError("empty metapath")
    tokens = text.split()
    steps: List[MetapathStep] = []

    if len(tokens) > 1:
        if len(tokens) % 2 == 0:
            raise MetapathSyntaxError(f"{text!r}: expected 'type arrow type [arrow type ...]'")
        at = tokens[0]
        schema.type_index(at)
        for i in range(1, len(tokens), 2):
            arrow, to = tokens[i], tokens[i + 1]
            fwd, rev = _FORWARD_ARROW.match(arrow), _REVERSE_ARROW.match(arrow)
            if fwd:
                step, at = _resolve(schema, fwd.group(1), at, False, to, text)
            elif rev:
                step, at = _resolve(schema, rev.group(1), at, True, to, text)
            else:
                raise MetapathSyntaxError(f"{text!r}: bad arrow {arrow!r}")
            steps.append(step)
    else:
        if target_type is None:
            raise MetapathSyntaxError(f"{text!r}: the compact form needs a target type")
        at = target_type
        for part in text.split("."):
            reverse = part.startswith("~")
            name = part[1:] if reverse else part
            if not name:
                raise MetapathSyntaxError(f"{text!r}: empty step")
            step, at = _resolve(schema, name, at, reverse, None, text)
            steps.append(step)

    path = Metapath(steps=tuple(steps), canonical=_is_canonical(steps))
    path.type_check(schema, target_type)
    return path
