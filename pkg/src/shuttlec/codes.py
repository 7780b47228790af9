"""CSS code constructions and parity-check matrix file I/O.

All matrices are dense ``numpy.uint8`` arrays with entries in {0, 1}.
Indices are 0-based internally; anything printed for users is 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import numpy.typing as npt

BinaryMatrix = npt.NDArray[np.uint8]

# Exponents of the 7x7 monomial matrix of the [[882,12]] quasi-cyclic GHP code;
# row r is this tuple cyclically shifted right by r.
QC_GHP_882_EXPONENTS = (56, 12, 52, 13, 39, 11, 61)
QC_GHP_882_CIRCULANT = 63
QC_GHP_882_B = (0, 1, 6)

# Gross code [[144,12,12]]: A = x^3 + y + y^2, B = y^3 + x + x^2, l=12, m=6.
GROSS_A = ((3, 0), (0, 1), (0, 2))
GROSS_B = ((0, 3), (1, 0), (2, 0))

# [[48,6,8]] generalized bicycle code, l=24.
GB48_A = (0, 2, 8, 15)
GB48_B = (0, 2, 12, 17)


class CodeError(ValueError):
    """Raised for malformed matrices, files or code parameters."""


class OrthogonalityError(CodeError):
    def __init__(self, x_row: int, z_row: int):
        self.x_row = x_row
        self.z_row = z_row
        super().__init__(
            f"CSS orthogonality violated: X row {x_row + 1} and Z row {z_row + 1} "
            "have odd overlap"
        )


def as_binary_matrix(data: npt.ArrayLike) -> BinaryMatrix:
    """Validate ``data`` as a non-empty 2D 0/1 matrix and return a uint8 copy."""
    arr = np.array(data)
    if arr.ndim != 2:
        raise CodeError(f"expected a 2D matrix, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise CodeError(f"matrix must have at least one row and column, got {arr.shape}")
    if not np.isin(arr, (0, 1)).all():
        raise CodeError("matrix entries must be 0 or 1")
    return arr.astype(np.uint8)


@dataclass(frozen=True, eq=False)
class CssCode:
    name: str
    hx: BinaryMatrix
    hz: BinaryMatrix

    def __post_init__(self) -> None:
        hx = as_binary_matrix(self.hx)
        hz = as_binary_matrix(self.hz)
        if hx.shape[1] != hz.shape[1]:
            raise CodeError(
                f"hx has {hx.shape[1]} columns but hz has {hz.shape[1]}"
            )
        for label, h in (("hx", hx), ("hz", hz)):
            empty = np.flatnonzero(~h.any(axis=1))
            if empty.size:
                raise CodeError(f"{label} row {empty[0] + 1} is all zero")
        check_orthogonal(hx, hz)
        hx.setflags(write=False)
        hz.setflags(write=False)
        object.__setattr__(self, "hx", hx)
        object.__setattr__(self, "hz", hz)

    @property
    def n(self) -> int:
        return int(self.hx.shape[1])

    @property
    def k(self) -> int:
        """Number of logical qubits, n - rank(hx) - rank(hz)."""
        return self.n - gf2_rank(self.hx) - gf2_rank(self.hz)

    def matrix(self, basis: str) -> BinaryMatrix:
        basis = basis.upper()
        if basis == "X":
            return self.hx
        if basis == "Z":
            return self.hz
        raise CodeError(f"unknown basis {basis!r}")

    def __repr__(self) -> str:
        return (
            f"CssCode(name={self.name!r}, n={self.n}, "
            f"rx={self.hx.shape[0]}, rz={self.hz.shape[0]})"
        )


def check_orthogonal(hx: BinaryMatrix, hz: BinaryMatrix) -> None:
    """Raise :class:`OrthogonalityError` naming the first row pair with odd overlap."""
    prod = (hx.astype(np.int64) @ hz.T.astype(np.int64)) % 2
    bad = np.argwhere(prod)
    if bad.size:
        raise OrthogonalityError(int(bad[0, 0]), int(bad[0, 1]))


def gf2_rank(matrix: npt.ArrayLike) -> int:
    a = np.array(matrix, dtype=np.uint8) & 1
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivots = np.flatnonzero(a[rank:, c])
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        hits = np.flatnonzero(a[:, c])
        hits = hits[hits != rank]
        a[hits] ^= a[rank]
        rank += 1
    return rank


def column_weights(matrix: BinaryMatrix) -> npt.NDArray[np.int64]:
    return matrix.sum(axis=0).astype(np.int64)


def is_column_regular(matrix: BinaryMatrix) -> bool:
    w = column_weights(matrix)
    return bool((w == w[0]).all())


# ---------------------------------------------------------------------------
# circulant helpers


def shift_matrix(size: int, power: int = 1) -> BinaryMatrix:
    """Cyclic shift ``S^power`` with ``S[i, i+1] = 1``; the matrix of x^power in F2[x]/(x^size - 1)."""
    return np.roll(np.eye(size, dtype=np.uint8), power % size, axis=1)


def circulant(size: int, exponents: Iterable[int], *, transpose: bool = False) -> BinaryMatrix:
    out = np.zeros((size, size), dtype=np.uint8)
    for e in exponents:
        out ^= shift_matrix(size, -e if transpose else e)
    return out


def _bivariate_poly(l: int, m: int, monomials: Sequence[tuple[int, int]]) -> BinaryMatrix:
    out = np.zeros((l * m, l * m), dtype=np.uint8)
    for a, b in monomials:
        out ^= np.kron(shift_matrix(l, a), shift_matrix(m, b))
    return out


# ---------------------------------------------------------------------------
# built-in codes


def steane() -> CssCode:
    h = np.array(
        [
            [0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
        ],
        dtype=np.uint8,
    )
    return CssCode("steane", h, h.copy())


def shor9() -> CssCode:
    hx = np.zeros((2, 9), dtype=np.uint8)
    hx[0, 0:6] = 1
    hx[1, 3:9] = 1
    hz = np.zeros((6, 9), dtype=np.uint8)
    for r, (a, b) in enumerate([(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)]):
        hz[r, [a, b]] = 1
    return CssCode("shor9", hx, hz)


def _check_lattice(L: int) -> None:
    if not isinstance(L, (int, np.integer)) or L < 2:
        raise CodeError(f"lattice size must be an integer >= 2, got {L!r}")


def toric2d(L: int) -> CssCode:
    """Kitaev toric code on an L x L torus, n = 2L^2.

    Built as the hypergraph product of the cyclic repetition code. The last
    vertex and the last plaquette check are dropped since each is the sum of
    the others.
    """
    _check_lattice(L)
    rep = circulant(L, (0, 1))
    eye = np.eye(L, dtype=np.uint8)
    hx = np.hstack([np.kron(rep, eye), np.kron(eye, rep.T)])
    hz = np.hstack([np.kron(eye, rep), np.kron(rep.T, eye)])
    return CssCode(f"toric:{L}", hx[:-1], hz[:-1])


def surface2d(L: int) -> CssCode:
    """Planar surface code with open boundaries, n = L^2 + (L-1)^2."""
    _check_lattice(L)
    rep = np.zeros((L - 1, L), dtype=np.uint8)
    for i in range(L - 1):
        rep[i, i] = rep[i, i + 1] = 1
    eye_l = np.eye(L, dtype=np.uint8)
    eye_r = np.eye(L - 1, dtype=np.uint8)
    hx = np.hstack([np.kron(rep, eye_l), np.kron(eye_r, rep.T)])
    hz = np.hstack([np.kron(eye_l, rep), np.kron(rep.T, eye_r)])
    return CssCode(f"surface:{L}", hx, hz)


def bivariate_bicycle(
    l: int,
    m: int,
    a_monomials: Sequence[tuple[int, int]],
    b_monomials: Sequence[tuple[int, int]],
    name: str | None = None,
) -> CssCode:
    """Bivariate bicycle code with ``A, B`` given as lists of ``(x_exp, y_exp)``.

    hx = [A | B], hz = [B^T | A^T], with x = S_l (x) I_m and y = I_l (x) S_m.
    """
    if not a_monomials or not b_monomials:
        raise CodeError("monomial lists must be nonempty")
    if l < 1 or m < 1:
        raise CodeError("circulant sizes must be positive")
    a_red = [(i % l, j % m) for i, j in a_monomials]
    b_red = [(i % l, j % m) for i, j in b_monomials]
    A = _bivariate_poly(l, m, a_red)
    B = _bivariate_poly(l, m, b_red)
    hx = np.hstack([A, B])
    hz = np.hstack([B.T, A.T])
    return CssCode(name or f"bb:{l},{m}", hx, hz)


def gross() -> CssCode:
    return bivariate_bicycle(12, 6, GROSS_A, GROSS_B, name="gross")


def generalized_bicycle(
    l: int, a_exps: Sequence[int], b_exps: Sequence[int], name: str | None = None
) -> CssCode:
    """Generalized bicycle code from univariate circulants, n = 2l.

    x acts as the transposed shift (row i has its one in column i - 1), the
    group-algebra convention under which published shuttle counts were made.
    """
    if not a_exps or not b_exps:
        raise CodeError("exponent lists must be nonempty")
    if l < 1:
        raise CodeError("circulant size must be positive")
    A = circulant(l, [e % l for e in a_exps], transpose=True)
    B = circulant(l, [e % l for e in b_exps], transpose=True)
    return CssCode(name or f"gb:{l}", np.hstack([A, B]), np.hstack([B.T, A.T]))


def gb48() -> CssCode:
    return generalized_bicycle(24, GB48_A, GB48_B, name="gb48")


def quasicyclic_ghp_882_12() -> CssCode:
    """[[882,12]] quasi-cyclic generalized hypergraph product code.

    hx = [A | b(x) I_7] and hz = [b(x)^T I_7 | A*] over F2[x]/(x^63 - 1),
    b(x) = 1 + x + x^6. A* transposes A and reverses each entry, which as a
    binary matrix is just the transpose of A.
    """
    ell = QC_GHP_882_CIRCULANT
    size = len(QC_GHP_882_EXPONENTS)
    A = np.zeros((size * ell, size * ell), dtype=np.uint8)
    for r in range(size):
        for c in range(size):
            e = QC_GHP_882_EXPONENTS[(c - r) % size]
            A[r * ell:(r + 1) * ell, c * ell:(c + 1) * ell] = shift_matrix(ell, e)
    b_block = np.kron(np.eye(size, dtype=np.uint8), circulant(ell, QC_GHP_882_B))
    hx = np.hstack([A, b_block])
    hz = np.hstack([b_block.T, A.T])
    return CssCode("qcghp882", hx, hz)


# ---------------------------------------------------------------------------
# name grammar

_MONO_RE = re.compile(r"^(?:x(?:\^?(\d+))?)?(?:(?<=[x\d])\*)?(?:y(?:\^?(\d+))?)?$")


def parse_monomials(text: str) -> list[tuple[int, int]]:
    """Parse ``"x3+y+y^2"`` style sums into ``(x_exp, y_exp)`` pairs."""
    out = []
    for term in text.replace(" ", "").split("+"):
        if term == "1":
            out.append((0, 0))
            continue
        match = _MONO_RE.match(term)
        if not term or match is None or term.endswith("*"):
            raise CodeError(f"cannot parse monomial {term!r}")
        xs, ys = match.groups()
        xe = (int(xs) if xs else 1) if "x" in term else 0
        ye = (int(ys) if ys else 1) if "y" in term else 0
        out.append((xe, ye))
    return out


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise CodeError(f"cannot parse exponent list {text!r}") from None


BUILTIN_NAMES = (
    "steane", "shor9", "toric:L", "surface:L", "gross", "gb48", "qcghp882",
    "bb:l,m:<A>:<B>", "gb:l:<a>:<b>",
)


def code_from_name(name: str) -> CssCode:
    """Build a code from the CLI grammar (see ``BUILTIN_NAMES``)."""
    key, _, rest = name.strip().partition(":")
    key = key.lower()
    try:
        if key == "steane" and not rest:
            return steane()
        if key in ("shor9", "shor") and not rest:
            return shor9()
        if key in ("qcghp882", "qcghp") and not rest:
            return quasicyclic_ghp_882_12()
        if key == "gross" and not rest:
            return gross()
        if key == "gb48" and not rest:
            return gb48()
        if key == "toric":
            return toric2d(int(rest))
        if key == "surface":
            return surface2d(int(rest))
        if key == "bb":
            dims, a, b = rest.split(":")
            l, m = (int(v) for v in dims.split(","))
            return bivariate_bicycle(l, m, parse_monomials(a), parse_monomials(b), name=name)
        if key == "gb":
            l, a, b = rest.split(":")
            return generalized_bicycle(int(l), _parse_int_list(a), _parse_int_list(b), name=name)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, CodeError):
            raise
        raise CodeError(f"malformed code name {name!r}: {exc}") from None
    raise CodeError(f"unknown code {name!r}; known forms: {', '.join(BUILTIN_NAMES)}")


# ---------------------------------------------------------------------------
# file format
#
#   # comment
#   <rows> <cols>
#   0 1 1 0 ...
#
# A combined CSS file carries an "X" and a "Z" header line before each matrix.


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


def _parse_matrix_lines(lines: list[str], where: str) -> BinaryMatrix:
    if not lines:
        raise CodeError(f"{where}: empty matrix file")
    head = lines[0].split()
    if len(head) != 2 or not all(t.isdigit() for t in head):
        raise CodeError(f"{where}: first line must be '<rows> <cols>', got {lines[0]!r}")
    rows, cols = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != rows:
        raise CodeError(f"{where}: header declares {rows} rows, found {len(body)}")
    data = []
    for i, line in enumerate(body, start=1):
        tokens = line.split()
        if len(tokens) != cols:
            raise CodeError(f"{where}: row {i} has {len(tokens)} entries, expected {cols}")
        if any(t not in ("0", "1") for t in tokens):
            raise CodeError(f"{where}: row {i} contains a non 0/1 token")
        data.append([int(t) for t in tokens])
    return as_binary_matrix(data)


def parse_matrix(text: str, where: str = "<string>") -> BinaryMatrix:
    return _parse_matrix_lines(_content_lines(text), where)


def format_matrix(matrix: BinaryMatrix) -> str:
    rows, cols = matrix.shape
    lines = [f"{rows} {cols}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in matrix)
    return "\n".join(lines) + "\n"


def load_matrix(path: str | Path) -> BinaryMatrix:
    path = Path(path)
    return parse_matrix(path.read_text(encoding="utf-8"), str(path))


def save_matrix(matrix: BinaryMatrix, path: str | Path) -> None:
    Path(path).write_text(format_matrix(as_binary_matrix(matrix)), encoding="utf-8")


def parse_css(text: str, where: str = "<string>", name: str = "file") -> CssCode:
    sections: dict[str, list[str]] = {}
    current = None
    for line in _content_lines(text):
        if line.upper() in ("X", "Z"):
            current = line.upper()
            if current in sections:
                raise CodeError(f"{where}: duplicate {current} section")
            sections[current] = []
        elif current is None:
            raise CodeError(f"{where}: expected an 'X' or 'Z' section header")
        else:
            sections[current].append(line)
    if set(sections) != {"X", "Z"}:
        raise CodeError(f"{where}: combined file needs both X and Z sections")
    hx = _parse_matrix_lines(sections["X"], f"{where} [X]")
    hz = _parse_matrix_lines(sections["Z"], f"{where} [Z]")
    return CssCode(name, hx, hz)


def load_css(path_x: str | Path, path_z: str | Path | None = None) -> CssCode:
    """Load a CSS code from two matrix files, or one combined X/Z file."""
    if path_z is None:
        p = Path(path_x)
        return parse_css(p.read_text(encoding="utf-8"), str(p), name=p.stem)
    hx = load_matrix(path_x)
    hz = load_matrix(path_z)
    return CssCode(Path(path_x).stem, hx, hz)


def format_css(code: CssCode) -> str:
    return "X\n" + format_matrix(code.hx) + "Z\n" + format_matrix(code.hz)


def save_css(code: CssCode, path: str | Path) -> None:
    Path(path).write_text(format_css(code), encoding="utf-8")
