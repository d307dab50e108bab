"""Conway's Game of Life on an unbounded plane.

Cells are a sparse set of (x, y) pairs with x = column (rightward) and
y = row (downward), matching RLE reading order.  The rule is fixed B3/S23.

`step` tallies neighbour contributions of the live cells; for big
populations with moderate coordinates it switches to a packed numpy path
that is exactly equivalent to the Counter tally.  Pattern I/O covers the
Life-ecosystem RLE format (read/write) and the plaintext .cells grid
(read only).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import EmergeLabError

CellSet = frozenset  # of (x, y) int pairs

NEIGHBOR_OFFSETS = tuple((dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)
                         if (dx, dy) != (0, 0))

# packed int64 key = x * 2**32 + (y + 2**31); usable while |x|, |y| < 2**30
_PACK_M = 1 << 32
_PACK_HALF = 1 << 31
_PACK_LIMIT = 1 << 30
_PACKED_OFFSETS = np.array([dx * _PACK_M + dy for dx, dy in NEIGHBOR_OFFSETS],
                           dtype=np.int64)


class PatternParseError(EmergeLabError):
    """Malformed pattern text; carries the 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + loc)
        self.line = line
        self.column = column


class RleParseError(PatternParseError):
    """Malformed RLE text."""


class UnsupportedRule(EmergeLabError):
    """RLE header names a rule other than B3/S23."""


def population(cells: CellSet) -> int:
    """Number of live cells."""
    return len(cells)


def _step_tally(cells) -> frozenset:
    """Reference step: neighbour counts in an associative tally."""
    tally = Counter()
    for x, y in cells:
        for dx, dy in NEIGHBOR_OFFSETS:
            tally[(x + dx, y + dy)] += 1
    if not isinstance(cells, (set, frozenset)):
        cells = set(cells)
    return frozenset(c for c, n in tally.items()
                     if n == 3 or (n == 2 and c in cells))


def _pack(cells) -> np.ndarray:
    arr = np.fromiter((x * _PACK_M + y + _PACK_HALF for x, y in cells),
                      dtype=np.int64, count=len(cells))
    return arr


def _unpack(keys: np.ndarray) -> frozenset:
    xs = keys >> 32
    ys = (keys & np.int64(_PACK_M - 1)) - _PACK_HALF
    return frozenset(zip(xs.tolist(), ys.tolist()))


def _step_packed(keys: np.ndarray) -> np.ndarray:
    """One generation over sorted packed keys; result is sorted too."""
    neighbors = (keys[:, None] + _PACKED_OFFSETS[None, :]).ravel()
    uniq, counts = np.unique(neighbors, return_counts=True)
    idx = np.searchsorted(keys, uniq)
    valid = idx < keys.size
    alive = np.zeros(uniq.size, dtype=bool)
    alive[valid] = keys[idx[valid]] == uniq[valid]
    keep = (counts == 3) | ((counts == 2) & alive)
    return uniq[keep]


def _packable(cells) -> bool:
    return all(-_PACK_LIMIT < x < _PACK_LIMIT and -_PACK_LIMIT < y < _PACK_LIMIT
               for x, y in cells)


def step(cells: CellSet) -> CellSet:
    """One generation of B3/S23."""
    if not cells:
        return frozenset()
    if len(cells) >= 256 and _packable(cells):
        return _unpack(_step_packed(np.sort(_pack(cells))))
    return _step_tally(cells)


def run(cells: CellSet, steps: int) -> CellSet:
    """`steps`-fold composition of step."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if not cells or steps == 0:
        return frozenset(cells)
    if _packable(cells):
        # stay in packed form across generations; coordinates cannot leave
        # the packable range faster than one cell per step
        if all(abs(x) + steps < _PACK_LIMIT and abs(y) + steps < _PACK_LIMIT
               for x, y in cells):
            keys = np.sort(_pack(cells))
            for _ in range(steps):
                if keys.size == 0:
                    return frozenset()
                keys = _step_packed(keys)
            return _unpack(keys)
    out = frozenset(cells)
    for _ in range(steps):
        out = _step_tally(out)
        if not out:
            break
    return out


def bounding_box(cells: CellSet) -> tuple[int, int, int, int] | None:
    """(min_x, min_y, max_x, max_y), or None for the empty set."""
    if not cells:
        return None
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    return min(xs), min(ys), max(xs), max(ys)


def translate(cells: CellSet, dx: int, dy: int) -> CellSet:
    return frozenset((x + dx, y + dy) for x, y in cells)


def canonical(cells: CellSet) -> tuple[CellSet, tuple[int, int]]:
    """Translate the bounding-box corner to the origin.

    Returns (normalised cells, corner) so the translation can be undone.
    """
    box = bounding_box(cells)
    if box is None:
        return frozenset(), (0, 0)
    x0, y0 = box[0], box[1]
    return translate(cells, -x0, -y0), (x0, y0)


@dataclass(frozen=True)
class FateReport:
    """Outcome of bounded fate classification.

    verdict is one of 'extinct', 'still_life', 'oscillator', 'translator',
    'unknown'.  `t` is the first generation at which the recurring state (or
    extinction) appears.  Oscillators and translators carry the period;
    translators also carry the per-period displacement.  'unknown' carries
    the exhausted budget instead.
    """

    verdict: str
    t: int = 0
    period: int = 0
    dx: int = 0
    dy: int = 0
    budget: int = 0


def detect_fate(cells: CellSet, budget: int) -> FateReport:
    """Classify a pattern by exact recurrence within `budget` generations.

    States are compared after translating the bounding box to the origin, so
    both in-place recurrence (still life, oscillator) and travelling
    recurrence (translator) are found exactly; life's ultimate fate in
    general is undecidable, hence the budget and the 'unknown' verdict.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    seen: dict[frozenset, tuple[int, tuple[int, int]]] = {}
    state = frozenset(cells)
    for t in range(budget + 1):
        if not state:
            return FateReport("extinct", t=t)
        canon, corner = canonical(state)
        if canon in seen:
            t0, corner0 = seen[canon]
            period = t - t0
            dx, dy = corner[0] - corner0[0], corner[1] - corner0[1]
            if (dx, dy) != (0, 0):
                return FateReport("translator", t=t0, period=period, dx=dx, dy=dy)
            if period == 1:
                return FateReport("still_life", t=t0, period=1)
            return FateReport("oscillator", t=t0, period=period)
        seen[canon] = (t, corner)
        if t < budget:
            state = step(state)
    return FateReport("unknown", budget=budget)


# ---------------------------------------------------------------------------
# Pattern I/O

_RLE_HEADER = re.compile(
    r"^\s*x\s*=\s*(\d+)\s*,\s*y\s*=\s*(\d+)\s*(?:,\s*rule\s*=\s*(\S+)\s*)?$",
    re.IGNORECASE)

RLE_LINE_LIMIT = 69


def parse_rle(text: str) -> CellSet:
    """Decode an RLE pattern into its live-cell set.

    Accepts '#'-comment lines before the header, a `x = W, y = H[, rule =
    B3/S23]` header, then runs of `b` (dead) / `o` (live) with `$` row
    breaks and a `!` terminator.  Anything after `!` is ignored.
    """
    lines = text.splitlines()
    header = None
    body_start = 0
    for i, line in enumerate(lines):
        if line.startswith("#") or not line.strip():
            continue
        header = _RLE_HEADER.match(line)
        if not header:
            raise RleParseError("expected RLE header 'x = W, y = H'", line=i + 1)
        body_start = i + 1
        break
    if header is None:
        raise RleParseError("no RLE header found", line=len(lines) or 1)
    rule = header.group(3)
    if rule is not None and rule.upper() != "B3/S23":
        raise UnsupportedRule(f"only B3/S23 is supported, got rule {rule}")

    cells = set()
    x = y = 0
    count = 0
    have_count = False
    for i in range(body_start, len(lines)):
        line = lines[i]
        for j, ch in enumerate(line):
            if ch.isdigit():
                count = count * 10 + int(ch)
                have_count = True
            elif ch in "bo":
                n = count if have_count else 1
                if ch == "o":
                    for k in range(n):
                        cells.add((x + k, y))
                x += n
                count, have_count = 0, False
            elif ch == "$":
                n = count if have_count else 1
                y += n
                x = 0
                count, have_count = 0, False
            elif ch == "!":
                if have_count:
                    raise RleParseError("dangling run count before '!'",
                                        line=i + 1, column=j + 1)
                return frozenset(cells)
            elif ch.isspace():
                continue
            else:
                raise RleParseError(f"unexpected character {ch!r}",
                                    line=i + 1, column=j + 1)
    raise RleParseError("missing '!' terminator", line=len(lines) or 1)


def write_rle(cells: CellSet) -> str:
    """Encode a cell set as canonical RLE text.

    The pattern is translated so the bounding-box corner sits at (0, 0);
    output lines never exceed 69 characters and the encoding is
    byte-deterministic.
    """
    norm, _ = canonical(cells)
    box = bounding_box(norm)
    if box is None:
        return "x = 0, y = 0, rule = B3/S23\n!\n"
    _, _, max_x, max_y = box
    header = f"x = {max_x + 1}, y = {max_y + 1}, rule = B3/S23\n"

    rows: dict[int, list[int]] = {}
    for x, y in norm:
        rows.setdefault(y, []).append(x)

    tokens: list[str] = []

    def emit(n: int, tag: str):
        tokens.append(f"{n}{tag}" if n > 1 else tag)

    last_row = 0
    for y in sorted(rows):
        if y > last_row:
            emit(y - last_row, "$")
        xs = sorted(rows[y])
        cursor = 0
        i = 0
        while i < len(xs):
            j = i
            while j + 1 < len(xs) and xs[j + 1] == xs[j] + 1:
                j += 1
            if xs[i] > cursor:
                emit(xs[i] - cursor, "b")
            emit(j - i + 1, "o")
            cursor = xs[j] + 1
            i = j + 1
        last_row = y
    tokens.append("!")

    lines = []
    current = ""
    for tok in tokens:
        if len(current) + len(tok) > RLE_LINE_LIMIT:
            lines.append(current)
            current = ""
        current += tok
    lines.append(current)
    return header + "\n".join(lines) + "\n"


def parse_cells(text: str) -> CellSet:
    """Decode the plaintext .cells format: '!'-comment lines, '.' dead,
    'O' live."""
    cells = set()
    y = 0
    for i, line in enumerate(text.splitlines()):
        if line.startswith("!"):
            continue
        for j, ch in enumerate(line.rstrip()):
            if ch == "O":
                cells.add((j, y))
            elif ch != ".":
                raise PatternParseError(f"unexpected character {ch!r}",
                                        line=i + 1, column=j + 1)
        y += 1
    return frozenset(cells)
