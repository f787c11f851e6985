"""
Type-level description of a heterogeneous graph.
"""

import json
from pathlib import Path
from typing import Any, List, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from ..errors import SchemaError, UnknownRelationError, UnknownTypeError


class Relation(BaseModel):
    """A typed relation ``(src_type, name, dst_type)``."""

    model_config = ConfigDict(frozen=True)

    src: str
    name: str
    dst: str

    @property
    def triple(self) -> Tuple[str, str, str]:
        return (self.src, self.name, self.dst)

    @property
    def key(self) -> str:
        """Compact ``src:name:dst`` form used in manifests and reports."""
        return f"{self.src}:{self.name}:{self.dst}"

    def __str__(self) -> str:
        return self.key


class Schema(BaseModel):
    """
    Ordered node types and ordered relation triples.

    Relation names must be unique per (src, dst) pair so that a name plus an
    endpoint type always identifies one relation.
    """

    model_config = ConfigDict(frozen=True)

    node_types: List[str]
    relations: List[Relation]

    @field_validator("relations", mode="before")
    @classmethod
    def _coerce_triples(cls, value: Any) -> Any:
        # Accept [src, name, dst] lists as written in schema files
        if isinstance(value, list):
            coerced = []
            for item in value:
                if isinstance(item, (list, tuple)):
                    if len(item) != 3:
                        raise ValueError(f"relation {item!r} is not a (src, name, dst) triple")
                    item = {"src": item[0], "name": item[1], "dst": item[2]}
                coerced.append(item)
            return coerced
        return value

    @model_validator(mode="after")
    def _check_invariants(self) -> "Schema":
        if len(set(self.node_types)) != len(self.node_types):
            raise ValueError(f"duplicate node type names in {self.node_types}")
        known = set(self.node_types)
        seen = set()
        for rel in self.relations:
            if rel.src not in known or rel.dst not in known:
                raise ValueError(f"relation {rel.key} references an undeclared node type")
            if rel.triple in seen:
                raise ValueError(f"duplicate relation {rel.key}")
            seen.add(rel.triple)
        return self

    def type_index(self, name: str) -> int:
        """
        Look up the index of a node type.

        Raises:
            UnknownTypeError: If the type is not declared
        """
        try:
            return self.node_types.index(name)
        except ValueError:
            raise UnknownTypeError(f"unknown node type '{name}' (known: {', '.join(self.node_types)})")

    def relation_index(self, relation: Any) -> int:
        """
        Resolve a relation reference to its index.

        Args:
            relation: An index, a Relation, a (src, name, dst) tuple or a ``src:name:dst`` key

        Raises:
            UnknownRelationError: If nothing matches
        """
        if isinstance(relation, int):
            if 0 <= relation < len(self.relations):
                return relation
            raise UnknownRelationError(f"relation index {relation} out of range")
        if isinstance(relation, Relation):
            triple = relation.triple
        elif isinstance(relation, str):
            triple = tuple(relation.split(":"))
        else:
            triple = tuple(relation)
        for i, rel in enumerate(self.relations):
            if rel.triple == triple:
                return i
        raise UnknownRelationError(f"unknown relation {relation!r}")

    def relations_named(self, name: str) -> List[int]:
        return [i for i, rel in enumerate(self.relations) if rel.name == name]

    @classmethod
    def from_file(cls, path: str) -> "Schema":
        """
        Read a JSON schema file ``{"node_types": [...], "relations": [[src, name, dst], ...]}``.

        Raises:
            SchemaError: If the file is unreadable or violates schema invariants
        """
        schema_path = Path(path)
        try:
            data = json.loads(schema_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise SchemaError(f"{schema_path}: cannot read schema: {e}")
        try:
            return cls(**data)
        except (TypeError, ValidationError) as e:
            raise SchemaError(f"{schema_path}: invalid schema: {e}")

    def to_file_dict(self) -> dict:
        return {
            "node_types": list(self.node_types),
            "relations": [list(rel.triple) for rel in self.relations],
        }
