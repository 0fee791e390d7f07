"""ASCII OBJ output.

Vertices then faces, 1-based indices, 9-significant-digit coordinates;
identical meshes serialize to identical bytes.
"""

from __future__ import annotations

from .errors import EmptyMeshError
from .mesher import Mesh, validate_mesh
from .sinks import Sink, fmt, write_text


def obj_text(mesh: Mesh) -> str:
    """Render ``mesh`` as an OBJ document string.

    The mesh must be non-empty and pass validation; a mesh that violates
    its own invariants is refused rather than serialized broken.
    """
    if mesh.triangle_count == 0 or mesh.vertex_count == 0:
        raise EmptyMeshError("refusing to write an empty OBJ")
    report = validate_mesh(mesh)
    if not report.ok:
        raise ValueError(f"invalid mesh: {'; '.join(report.violations)}")
    lines = [
        f"v {fmt(x)} {fmt(y)} {fmt(z)}" for x, y, z in mesh.vertices.tolist()
    ]
    lines.extend(
        f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.triangles.tolist()
    )
    lines.append("")
    return "\n".join(lines)


def write_obj(mesh: Mesh, sink: Sink) -> int:
    """Write ``mesh`` to ``sink``; returns the byte count."""
    return write_text(sink, obj_text(mesh))


def read_obj_counts(text: str) -> tuple[int, int]:
    """Vertex and face counts of an OBJ document, for round-trip checks."""
    vertices = faces = 0
    for line in text.splitlines():
        if line.startswith("v "):
            vertices += 1
        elif line.startswith("f "):
            faces += 1
    return vertices, faces
