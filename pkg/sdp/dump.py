"""Plain-text dump of SDP data for cross-checking with external solvers.

Format (one item per line, '#' starts a comment):

    dimension <n>
    sense <max|min>
    unit_diagonal <0|1>
    objective
    <n rows of n entries "re:im">
    constraint <relation> <bound> <name>
    <n rows of n entries "re:im">
    ...
"""

from pathlib import Path
from typing import Iterator, List, Union

import numpy as np

from logs.logger import get_logger
from sdp.models import LinearConstraint, Relation, SdpProblem, Sense
from utils.exceptions import ScenarioConfigError

logger = get_logger(__name__)


def _format_matrix(a: np.ndarray) -> List[str]:
    return [" ".join(f"{z.real:.17g}:{z.imag:.17g}" for z in row) for row in a]


def dump_problem(problem: SdpProblem, path: Union[str, Path]) -> Path:
    """Write a problem to a text file and return its path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        "# Hermitian SDP: optimize Tr(C V) s.t. Tr(A_i V) <rel> b_i, V >= 0",
        f"dimension {problem.dimension}",
        f"sense {problem.sense.value}",
        f"unit_diagonal {int(problem.unit_diagonal)}",
        "objective",
        *_format_matrix(problem.objective),
    ]
    for constraint in problem.constraints:
        lines.append(f"constraint {constraint.relation.value} {constraint.bound:.17g} {constraint.name or '-'}")
        lines.extend(_format_matrix(constraint.matrix))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug(f"SDP with {len(problem.constraints)} constraints written to {path}")
    return path


def _content_lines(text: str) -> Iterator[str]:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line


def _parse_matrix(lines: Iterator[str], n: int, path: Path) -> np.ndarray:
    rows = []
    for _ in range(n):
        try:
            row = [complex(float(re), float(im)) for re, im in (entry.split(":") for entry in next(lines).split())]
        except (StopIteration, ValueError) as e:
            raise ScenarioConfigError(f"Malformed matrix row: {e}", path=str(path)) from e
        if len(row) != n:
            raise ScenarioConfigError(f"Expected {n} entries per row, got {len(row)}", path=str(path))
        rows.append(row)
    return np.array(rows, dtype=complex)


def _header_value(lines: Iterator[str], key: str, path: Path) -> str:
    try:
        name, value = next(lines).split(maxsplit=1)
    except (StopIteration, ValueError) as e:
        raise ScenarioConfigError(f"Missing '{key}' line", path=str(path), key=key) from e
    if name != key:
        raise ScenarioConfigError(f"Expected '{key}', found '{name}'", path=str(path), key=key)
    return value


def load_problem(path: Union[str, Path]) -> SdpProblem:
    """Read a problem written by dump_problem."""
    path = Path(path)
    lines = _content_lines(path.read_text(encoding="utf-8"))
    n = int(_header_value(lines, "dimension", path))
    sense = Sense(_header_value(lines, "sense", path))
    unit_diagonal = _header_value(lines, "unit_diagonal", path) == "1"
    if next(lines, None) != "objective":
        raise ScenarioConfigError("Missing 'objective' line", path=str(path), key="objective")
    objective = _parse_matrix(lines, n, path)

    constraints = []
    for header in lines:
        parts = header.split()
        if parts[0] != "constraint" or len(parts) != 4:
            raise ScenarioConfigError(f"Malformed constraint header: {header}", path=str(path))
        _, relation, bound, name = parts
        matrix = _parse_matrix(lines, n, path)
        constraints.append(LinearConstraint(matrix, Relation(relation), float(bound), "" if name == "-" else name))
    return SdpProblem(objective=objective, sense=sense, constraints=tuple(constraints), unit_diagonal=unit_diagonal)
