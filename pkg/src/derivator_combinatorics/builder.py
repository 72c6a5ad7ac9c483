"""
Category Builder for general finite categories.

Builder Pattern implementation for safe construction of finite categories
from named arrows and a composition table.
"""
import copy
import difflib
import json
from pathlib import Path
from typing import Any, Dict, Hashable, Iterable, List, Optional, Tuple, Union

from derivator_combinatorics.errors import CategoryLawError
from derivator_combinatorics.fincat import FinCat, HomTable, MorId, check_category_laws

# For compatibility with Python < 3.11
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self


class CategoryBuilder:
    """Builder for finite categories with fluent interface."""

    def __init__(self) -> None:
        """Initialize a new builder with no objects."""
        self._objects: List[Hashable] = []
        self._arrows: Dict[str, Tuple[Hashable, Hashable]] = {}
        self._identities: Dict[Hashable, str] = {}
        self._composites: Dict[Tuple[str, str], str] = {}

    def object(self, label: Hashable) -> Self:
        """
        Add an object.

        Args:
            label: Hashable object label (int, str or tuple)

        Returns:
            Self for method chaining

        Raises:
            TypeError: If label is None or unhashable
            ValueError: If the label is already present

        Example:
            >>> builder.object("x").object(("y", 1))
        """
        if label is None:
            raise TypeError("label cannot be None")
        try:
            hash(label)
        except TypeError:
            raise TypeError(f"label must be hashable, got {type(label)}") from None
        if label in self._objects:
            raise ValueError(f"object {label!r} already exists")
        self._objects.append(label)
        return self

    def objects(self, labels: Iterable[Hashable]) -> Self:
        """
        Add several objects in order.

        Raises:
            TypeError: If labels is not iterable or a label is unhashable
            ValueError: If a label repeats
        """
        if labels is None or isinstance(labels, (str, bytes)):
            raise TypeError(f"labels must be an iterable of labels, got {type(labels)}")
        for label in labels:
            self.object(label)
        return self

    def arrow(self, name: str, source: Hashable, target: Hashable) -> Self:
        """
        Add a named arrow between existing objects.

        Args:
            name: Unique non-empty arrow name
            source: Source object
            target: Target object

        Returns:
            Self for method chaining

        Raises:
            ValueError: If name is empty or taken, or an endpoint is unknown

        Example:
            >>> builder.objects([0, 1]).arrow("f", 0, 1)
        """
        if not isinstance(name, str) or not name:
            raise ValueError("name must be a non-empty string")
        if name in self._arrows:
            raise ValueError(f"arrow {name!r} already exists")
        for end in (source, target):
            if end not in self._objects:
                raise ValueError(f"arrow {name!r} uses unknown object {end!r}")
        self._arrows[name] = (source, target)
        return self

    def identity(self, obj: Hashable, name: Optional[str] = None) -> Self:
        """
        Declare the identity arrow of an object.

        Objects without a declared identity get ``id_<label>`` on build.

        Raises:
            ValueError: If obj is unknown or already has an identity
        """
        if obj not in self._objects:
            raise ValueError(f"unknown object {obj!r}")
        if obj in self._identities:
            raise ValueError(f"object {obj!r} already has identity {self._identities[obj]!r}")
        name = name or self._fresh_identity_name(obj)
        self.arrow(name, obj, obj)
        self._identities[obj] = name
        return self

    def compose(self, g: str, f: str, result: str) -> Self:
        """
        Record ``g∘f = result``.

        Args:
            g: Arrow applied second
            f: Arrow applied first
            result: Name of the composite

        Returns:
            Self for method chaining

        Raises:
            ValueError: If a name is unknown, the pair is not composable, the
                result has the wrong endpoints, or a different composite
                was already recorded

        Example:
            >>> builder.compose("g", "f", "gf")
        """
        for arrow in (g, f, result):
            if arrow not in self._arrows:
                raise ValueError(f"unknown arrow {arrow!r}")
        f_source, f_target = self._arrows[f]
        g_source, g_target = self._arrows[g]
        if f_target != g_source:
            raise ValueError(f"{g!r} cannot follow {f!r}: {f_target!r} != {g_source!r}")
        if self._arrows[result] != (f_source, g_target):
            raise ValueError(
                f"composite {result!r} must go {f_source!r} -> {g_target!r}, "
                f"got {self._arrows[result][0]!r} -> {self._arrows[result][1]!r}"
            )
        known = self._composites.get((g, f))
        if known is not None and known != result:
            raise ValueError(f"{g!r}∘{f!r} already recorded as {known!r}")
        self._composites[(g, f)] = result
        return self

    def __len__(self) -> int:
        """
        Return the number of declared arrows, identities included.

        Example:
            >>> builder = CategoryBuilder().objects([0, 1]).arrow("f", 0, 1)
            >>> len(builder)
            1
        """
        return len(self._arrows)

    def __repr__(self) -> str:
        """
        Return a string representation of the builder for debugging.

        Example:
            >>> repr(CategoryBuilder().objects([0, 1]).arrow("f", 0, 1))
            'CategoryBuilder(objects=2, arrows=1, preview=[f])'
        """
        if not self._objects:
            return "CategoryBuilder(objects=0)"
        names = list(self._arrows)
        preview = ", ".join(names[:3])
        if len(names) > 3:
            preview += "..."
        return (
            f"CategoryBuilder(objects={len(self._objects)}, arrows={len(names)}, "
            f"preview=[{preview}])"
        )

    def clear(self) -> Self:
        """Remove all objects, arrows and composites."""
        self._objects.clear()
        self._arrows.clear()
        self._identities.clear()
        self._composites.clear()
        return self

    def copy(self) -> "CategoryBuilder":
        """
        Create an independent copy of the builder.

        Example:
            >>> base = CategoryBuilder().object("x")
            >>> extended = base.copy().object("y")
            >>> len(base._objects), len(extended._objects)
            (1, 2)
        """
        new_builder = CategoryBuilder()
        new_builder._objects = self._objects.copy()
        new_builder._arrows = self._arrows.copy()
        new_builder._identities = self._identities.copy()
        new_builder._composites = self._composites.copy()
        return new_builder

    def validate(self) -> bool:
        """
        Validate the presentation before building.

        Returns:
            True if every category law holds

        Raises:
            ValueError: If there are no objects
            CategoryLawError: Missing composite, identity failure or
                non-associative triple, with the arrow names as witness
        """
        self._assemble()
        return True

    def get_arrow_names(self) -> List[str]:
        """Return declared arrow names in declaration order."""
        return list(self._arrows)

    def has_arrow(self, name: str) -> bool:
        """
        Check whether an arrow name is declared.

        Raises:
            TypeError: If name is not a string
        """
        if not isinstance(name, str):
            raise TypeError(f"name must be a string, got {type(name)}")
        return name in self._arrows

    def to_dict(self) -> Dict[str, Any]:
        """Return the presentation in the ``{"general": ...}`` JSON layout."""
        return {
            "general": {
                "objects": copy.deepcopy(self._objects),
                "arrows": [[name, s, t] for name, (s, t) in self._arrows.items()],
                "identities": [[obj, name] for obj, name in self._identities.items()],
                "compose": [[g, f, gf] for (g, f), gf in self._composites.items()],
            }
        }

    def pretty_print(self, indent: int = 2, ensure_ascii: bool = False) -> str:
        """Return the presentation as formatted JSON."""
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=ensure_ascii)

    def to_json_file(
        self,
        filepath: Union[str, Path],
        indent: int = 2,
        ensure_ascii: bool = False,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> None:
        """
        Save the presentation to a JSON file readable by the CLI.

        Args:
            filepath: Output path; parent directories are created
            indent: Number of spaces for indentation (default: 2)
            ensure_ascii: If False, non-ASCII characters are output as-is
            metadata: Optional metadata stored next to the presentation
        """
        filepath = Path(filepath)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        output = self.to_dict()
        if metadata:
            output["metadata"] = metadata
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(output, f, indent=indent, ensure_ascii=ensure_ascii)

    def compare_with(self, other: "CategoryBuilder", context_lines: int = 3) -> str:
        """
        Compare two presentations and return a unified diff.

        Returns:
            Unified diff, or "No differences." if the presentations match

        Raises:
            TypeError: If other is not a CategoryBuilder or context_lines not an int
            ValueError: If context_lines is negative
        """
        if not isinstance(other, CategoryBuilder):
            raise TypeError(f"other must be a CategoryBuilder, got {type(other)}")
        if not isinstance(context_lines, int):
            raise TypeError(f"context_lines must be an int, got {type(context_lines)}")
        if context_lines < 0:
            raise ValueError("context_lines cannot be negative")

        a = json.dumps(self.to_dict(), indent=2, ensure_ascii=False, sort_keys=True, default=str)
        b = json.dumps(other.to_dict(), indent=2, ensure_ascii=False, sort_keys=True, default=str)
        diff = difflib.unified_diff(
            a.splitlines(keepends=True),
            b.splitlines(keepends=True),
            fromfile="new",
            tofile="other",
            n=context_lines,
        )
        out = "".join(diff)
        return out if out else "No differences."

    def build(self) -> FinCat:
        """
        Return the validated category.

        Raises:
            ValueError: If there are no objects
            CategoryLawError: If a category law fails

        Example:
            >>> category = CategoryBuilder().objects([0, 1]).arrow("f", 0, 1).build()
            >>> category.num_morphisms()
            3
        """
        return self._assemble()

    def _fresh_identity_name(self, obj: Hashable) -> str:
        name = f"id_{obj}"
        while name in self._arrows:
            name = f"{name}'"
        return name

    def _assemble(self) -> FinCat:
        if not self._objects:
            raise ValueError("Category cannot be empty")

        identities = dict(self._identities)
        arrows = dict(self._arrows)
        for obj in self._objects:
            if obj not in identities:
                name = self._fresh_identity_name(obj)
                identities[obj] = name
                arrows[name] = (obj, obj)

        # identities take index 0 of their endomorphism set
        hom: HomTable = {}
        ids: Dict[str, MorId] = {}
        for obj, name in identities.items():
            ids[name] = (obj, obj, 0)
            hom[(obj, obj)] = ((obj, obj, 0),)
        for name, (source, target) in arrows.items():
            if name in ids:
                continue
            existing = hom.get((source, target), ())
            ids[name] = (source, target, len(existing))
            hom[(source, target)] = existing + (ids[name],)
        names = {m: name for name, m in ids.items()}

        table: Dict[Tuple[MorId, MorId], MorId] = {
            (ids[g], ids[f]): ids[gf] for (g, f), gf in self._composites.items()
        }
        # composites with identities need not be recorded
        for m in ids.values():
            source, target = m[0], m[1]
            table.setdefault((ids[identities[target]], m), m)
            table.setdefault((m, ids[identities[source]]), m)

        for f_name, f in ids.items():
            for g_name, g in ids.items():
                if f[1] == g[0] and (g, f) not in table:
                    raise CategoryLawError(
                        f"missing composite {g_name}∘{f_name}", witness=(g_name, f_name)
                    )

        category = FinCat(self._objects, hom, table=table, names=names)
        report = check_category_laws(category)
        if not report.passed:
            raise CategoryLawError(f"{report.violation}: {report.witness!r}", witness=report.witness)
        return category
