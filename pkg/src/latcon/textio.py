"""Line-oriented text format for lattices.

    lattice <name>
    elements <id...>
    cover <lo> <hi>
    embed <id> <rank> <xpos>
    end

'#' starts a comment; blank lines are ignored.  format_document emits the
canonical form, so format(parse(text)) is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import FiniteLattice
from .errors import ParseError
from .planar import PlanarDiagram, build_diagram


@dataclass
class LatticeDocument:
    name: str
    elements: list[str] = field(default_factory=list)
    covers: list[tuple[str, str]] = field(default_factory=list)
    embed: dict[str, tuple[int, int]] = field(default_factory=dict)

    def to_lattice(self) -> FiniteLattice:
        return FiniteLattice(self.elements, self.covers)

    def to_diagram(self) -> Optional[PlanarDiagram]:
        """Diagram when full embed data is present, else None."""
        if not self.embed or any(e not in self.embed for e in self.elements):
            return None
        lat = self.to_lattice()
        rank = {e: rc[0] for e, rc in self.embed.items()}
        xpos = {e: rc[1] for e, rc in self.embed.items()}
        return build_diagram(lat, rank, xpos)


def parse(text: str) -> LatticeDocument:
    doc: Optional[LatticeDocument] = None
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError(lineno, "content after 'end'")
        words = line.split()
        key, args = words[0], words[1:]
        if key == "lattice":
            if doc is not None:
                raise ParseError(lineno, "duplicate 'lattice' header")
            if len(args) != 1:
                raise ParseError(lineno, "expected: lattice <name>")
            doc = LatticeDocument(args[0])
            continue
        if doc is None:
            raise ParseError(lineno, "expected 'lattice <name>' first")
        if key == "elements":
            doc.elements.extend(args)
        elif key == "cover":
            if len(args) != 2:
                raise ParseError(lineno, "expected: cover <lo> <hi>")
            doc.covers.append((args[0], args[1]))
        elif key == "embed":
            if len(args) != 3:
                raise ParseError(lineno, "expected: embed <id> <rank> <xpos>")
            try:
                doc.embed[args[0]] = (int(args[1]), int(args[2]))
            except ValueError:
                raise ParseError(lineno, "rank and xpos must be integers") from None
        elif key == "end":
            ended = True
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")
    if doc is None:
        raise ParseError(1, "empty document")
    if not ended:
        raise ParseError(len(text.splitlines()) or 1, "missing 'end'")
    return doc


def format_document(doc: LatticeDocument) -> str:
    lines = [f"lattice {doc.name}"]
    lines.append("elements " + " ".join(doc.elements))
    for lo, hi in doc.covers:
        lines.append(f"cover {lo} {hi}")
    for e in doc.elements:
        if e in doc.embed:
            r, x = doc.embed[e]
            lines.append(f"embed {e} {r} {x}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def document_for(
    name: str, lattice: FiniteLattice, diagram: Optional[PlanarDiagram] = None
) -> LatticeDocument:
    doc = LatticeDocument(name, list(lattice.elements), list(lattice.covers))
    if diagram is not None:
        doc.embed = {
            e: (diagram.rank[e], diagram.xpos[e]) for e in lattice.elements
        }
    return doc
