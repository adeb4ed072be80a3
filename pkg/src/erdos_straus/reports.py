"""CSV artifacts, byte-compatible with the original notebook outputs.

Two row schemas exist: coverage files carry q,x,y,z,pi with empty y/z
fields for families that do not use them, prime files carry q,x,y,z only.
Coverage batch files are named results_batch<B>.csv with an unpadded index
at the output root; prime batch files are results_batch<BBB>.csv, zero
padded to three digits, under a Results/ subdirectory.  Fields are plain
ASCII, comma separated, never quoted; rows end with a newline.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .families import PolyId, WitnessTriple
from .search import Witness

COVERAGE_HEADER = "q,x,y,z,pi"
PRIME_HEADER = "q,x,y,z"

FAMILY_LABELS = ("p1", "p2", "p3", "p4")


class ReportFormatError(Exception):
    """A CSV file does not match either of the two row schemas."""


@dataclass(frozen=True)
class SolutionRow:
    """One solved q.  y/z are None where the family does not use them;
    pi is None in prime-mode files."""

    q: int
    x: int
    y: Optional[int] = None
    z: Optional[int] = None
    pi: Optional[str] = None

    def __post_init__(self) -> None:
        if self.pi is not None and self.pi not in FAMILY_LABELS:
            raise ValueError(f"bad family label {self.pi!r}")
        if self.pi == "p3" and self.z is not None:
            raise ValueError("p3 rows must leave z empty")
        if self.pi == "p4" and (self.y is not None or self.z is not None):
            raise ValueError("p4 rows must leave y and z empty")


def witness_to_row(w: Witness) -> SolutionRow:
    """Render a witness with the file conventions for unused coordinates."""
    if w.poly is PolyId.P4:
        return SolutionRow(w.q, w.triple.x, None, None, "p4")
    if w.poly is PolyId.P3:
        return SolutionRow(w.q, w.triple.x, w.triple.y, None, "p3")
    return SolutionRow(w.q, w.triple.x, w.triple.y, w.triple.z, w.poly.label)


def row_to_witness(row: SolutionRow) -> Witness:
    """Inverse of witness_to_row (coverage rows only)."""
    if row.pi is None:
        raise ValueError("prime rows carry no family label")
    poly = PolyId.from_label(row.pi)
    return Witness(row.q, poly, WitnessTriple(row.x, row.y or 1, row.z or 1))


def _cell(v: Optional[int]) -> str:
    return "" if v is None else str(v)


def _format_row(row: SolutionRow, prime_mode: bool) -> str:
    cells = [str(row.q), str(row.x), _cell(row.y), _cell(row.z)]
    if not prime_mode:
        cells.append(row.pi or "")
    return ",".join(cells)


def results_batch_path(batch_index: int, mode: str, out_dir: Path) -> Path:
    if mode == "prime":
        return out_dir / "Results" / f"results_batch{batch_index:03d}.csv"
    return out_dir / f"results_batch{batch_index}.csv"


def unsolved_path(batch_index: Optional[int], mode: str, out_dir: Path) -> Path:
    if mode == "prime":
        base = out_dir / "Results"
        name = "all_unsolved.csv" if batch_index is None else f"unsolved_batch{batch_index:03d}.csv"
    else:
        base = out_dir
        name = "unsolved_all.csv" if batch_index is None else f"unsolved_batch{batch_index}.csv"
    return base / name


def write_results_batch(
    rows: Sequence[SolutionRow], batch_index: int, mode: str, out_dir: Path
) -> Path:
    """Write one batch's solution rows; rows must already be sorted by q."""
    if mode not in ("coverage", "prime"):
        raise ValueError(f"unknown mode {mode!r}")
    if any(rows[i].q > rows[i + 1].q for i in range(len(rows) - 1)):
        raise ValueError("rows must be sorted ascending by q")
    prime = mode == "prime"
    path = results_batch_path(batch_index, mode, Path(out_dir))
    header = PRIME_HEADER if prime else COVERAGE_HEADER
    _write_lines(path, [header] + [_format_row(r, prime) for r in rows])
    return path


def write_results_aggregate(rows: Sequence[SolutionRow], out_dir: Path) -> Path:
    """Prime mode's all_solutions.csv under Results/."""
    path = Path(out_dir) / "Results" / "all_solutions.csv"
    _write_lines(path, [PRIME_HEADER] + [_format_row(r, True) for r in rows])
    return path


def write_unsolved(
    qs: Sequence[int], batch_index: Optional[int], out_dir: Path, mode: str = "coverage"
) -> Path:
    """Single-column unsolved file; batch_index None means the aggregate."""
    if any(qs[i] >= qs[i + 1] for i in range(len(qs) - 1)):
        raise ValueError("unsolved q values must be sorted and deduplicated")
    path = unsolved_path(batch_index, mode, Path(out_dir))
    _write_lines(path, ["q"] + [str(q) for q in qs])
    return path


def _write_lines(path: Path, lines: Iterable[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(path, "w", encoding="ascii", newline="") as fh:
            for line in lines:
                fh.write(line)
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write report file {path}: {exc}") from exc


def read_results(path: Path) -> list[SolutionRow]:
    """Parse either schema by header; raises with a line number on bad rows."""
    path = Path(path)
    with open(path, "r", encoding="ascii", newline="") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ReportFormatError(f"{path}: empty file")
    header = lines[0]
    if header == COVERAGE_HEADER:
        prime = False
    elif header == PRIME_HEADER:
        prime = True
    else:
        raise ReportFormatError(f"{path}: unrecognized header {header!r}")
    rows = []
    width = 4 if prime else 5
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != width:
            raise ReportFormatError(f"{path}:{lineno}: expected {width} fields, got {len(cells)}")
        try:
            q, x = int(cells[0]), int(cells[1])
            y = int(cells[2]) if cells[2] else None
            z = int(cells[3]) if cells[3] else None
            pi = None if prime else cells[4]
            rows.append(SolutionRow(q, x, y, z, pi))
        except ValueError as exc:
            raise ReportFormatError(f"{path}:{lineno}: {exc}") from None
    return rows


def split_by_family(results_path: Path, out_dir: Path) -> list[Path]:
    """Split a coverage results file into q_with_p1.csv .. q_with_p4.csv.

    Each output is a headerless single column of q values in file order,
    replicating the original analysis script.
    """
    with open(results_path, encoding="ascii") as fh:
        if fh.readline().rstrip("\n") != COVERAGE_HEADER:
            raise ReportFormatError(f"{results_path}: need the 5-column coverage schema")
    rows = read_results(results_path)
    out = []
    out_dir = Path(out_dir)
    for label in FAMILY_LABELS:
        path = out_dir / f"q_with_{label}.csv"
        _write_lines(path, [str(r.q) for r in rows if r.pi == label])
        out.append(path)
    return out
