"""Built-in presentations and morphisms, loaded from the package data."""

from __future__ import annotations

from importlib import resources

from .sexpr import Document, MorphismEntry, parse_document

_DOC: Document | None = None


def _document() -> Document:
    global _DOC
    if _DOC is None:
        text = (
            resources.files("dioperad")
            .joinpath("data/builtins.sexp")
            .read_text(encoding="utf-8")
        )
        _DOC = parse_document(text)
    return _DOC


def presentation_names() -> tuple:
    return tuple(_document().presentations)


def morphism_names() -> tuple:
    return tuple(_document().morphisms)


def presentation(name: str):
    doc = _document()
    entry = doc.presentations.get(name)
    if entry is None:
        known = ", ".join(sorted(doc.presentations))
        raise ValueError(f"no builtin presentation {name!r} (known: {known})")
    return entry


def morphism(name: str) -> MorphismEntry:
    doc = _document()
    entry = doc.morphisms.get(name)
    if entry is None:
        known = ", ".join(sorted(doc.morphisms))
        raise ValueError(f"no builtin morphism {name!r} (known: {known})")
    return entry
