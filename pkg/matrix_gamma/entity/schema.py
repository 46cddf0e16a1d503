import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from matrix_gamma.algebra.groupmodel import (GroupSpec, RepSpec, appell_data, appell_data_inhomogeneous,
                                             exponential_data, gauss_data, gauss_data_inhomogeneous,
                                             pochhammer_data, toric_data)
from matrix_gamma.constant import BACKENDS, MAX_BLOCK_SIZE, MODE_EXACT, MODE_FLOAT
from matrix_gamma.exception import SchemaError

RATIONAL_PATTERN = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")

NAMED_DATA = {
    "gauss": lambda options: gauss_data(options["n"]),
    "gauss_inhomogeneous": lambda options: gauss_data_inhomogeneous(options["n"]),
    "pochhammer": lambda options: pochhammer_data(options["n"], options["p"]),
    "appell": lambda options: appell_data(),
    "appell_inhomogeneous": lambda options: appell_data_inhomogeneous(),
    "exponential": lambda options: exponential_data(options["n"]),
    "toric": lambda options: toric_data(options["points"]),
}


@dataclass
class SpecDocument:
    group: Optional[GroupSpec] = None
    reps: Tuple[RepSpec, ...] = ()
    s: Optional[Tuple] = None
    chi: Optional[Tuple] = None
    backend: Optional[str] = None
    truncation: Optional[int] = None
    seed: Optional[int] = None
    mode: Optional[str] = None
    point: Optional[Tuple] = None
    branch: Optional[complex] = None
    check: Dict[str, Any] = field(default_factory=dict)
    cobase: Optional[Tuple[int, ...]] = None
    integrate: Dict[str, Any] = field(default_factory=dict)
    fourier: Dict[str, Any] = field(default_factory=dict)
    threej: Dict[str, Any] = field(default_factory=dict)
    weight: Optional[Tuple[int, ...]] = None
    x: Any = None

    def to_record(self) -> dict:
        """Inverse of SpecDocumentSchema.parse; rationals become {"num", "den"} records."""
        record: Dict[str, Any] = {}
        if self.group is not None:
            record["group"] = {"torus_rank": self.group.torus_rank, "gl_blocks": list(self.group.gl_blocks)}
            record["reps"] = [{"torus_char": list(rep.torus_char), "block": rep.block,
                               "block_twist": rep.block_twist} for rep in self.reps]
        for key in ("s", "chi", "point", "x"):
            value = getattr(self, key)
            if value is not None:
                record[key] = serialize_value(value)
        for key in ("backend", "truncation", "seed", "mode"):
            value = getattr(self, key)
            if value is not None:
                record[key] = value
        if self.branch is not None:
            record["branch"] = serialize_value(self.branch)
        if self.cobase is not None:
            record["cobase"] = list(self.cobase)
        if self.weight is not None:
            record["weight"] = list(self.weight)
        for key in ("check", "integrate", "fourier", "threej"):
            value = getattr(self, key)
            if value:
                record[key] = serialize_value(value)
        return record


def serialize_value(value):
    if isinstance(value, bool) or value is None or isinstance(value, (str, int, float)):
        return value
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {key: serialize_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize_value(item) for item in value]
    raise TypeError(f"cannot serialize {value!r}")


class SpecDocumentSchema:

    def __init__(self):
        self.col_group: str = "group"
        self.col_torus_rank: str = "torus_rank"
        self.col_gl_blocks: str = "gl_blocks"
        self.col_reps: str = "reps"
        self.col_torus_char: str = "torus_char"
        self.col_block: str = "block"
        self.col_block_twist: str = "block_twist"
        self.col_data: str = "data"
        self.col_s: str = "s"
        self.col_chi: str = "chi"
        self.col_backend: str = "backend"
        self.col_truncation: str = "truncation"
        self.col_seed: str = "seed"
        self.col_mode: str = "mode"
        self.col_point: str = "point"
        self.col_branch: str = "branch"
        self.col_check: str = "check"
        self.col_cobase: str = "cobase"
        self.col_integrate: str = "integrate"
        self.col_fourier: str = "fourier"
        self.col_threej: str = "threej"
        self.col_weight: str = "weight"
        self.col_x: str = "x"

    @property
    def known_fields(self) -> List[str]:
        return [self.col_group, self.col_reps, self.col_data, self.col_s, self.col_chi, self.col_backend,
                self.col_truncation, self.col_seed, self.col_mode, self.col_point, self.col_branch,
                self.col_check, self.col_cobase, self.col_integrate, self.col_fourier, self.col_threej,
                self.col_weight, self.col_x]

    @property
    def option_sections(self) -> List[str]:
        return [self.col_check, self.col_integrate, self.col_fourier, self.col_threej]

    # ------------------------------------------------------------- scalars

    @staticmethod
    def parse_value(value, path: str, allow_float: bool):
        """A rational (int, "p/q", {"num", "den"}), or in float mode a float or {"re", "im"}."""
        if isinstance(value, bool):
            raise SchemaError(path, "booleans are not numbers")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str) and RATIONAL_PATTERN.match(value):
            try:
                return Fraction(value.replace(" ", ""))
            except ZeroDivisionError:
                raise SchemaError(path, "zero denominator")
        if isinstance(value, dict) and set(value) == {"num", "den"}:
            try:
                return Fraction(int(value["num"]), int(value["den"]))
            except (ValueError, ZeroDivisionError) as e:
                raise SchemaError(path, f"bad rational record: {e}")
        if isinstance(value, float) or (isinstance(value, dict) and set(value) == {"re", "im"}):
            if not allow_float:
                raise SchemaError(path, "floating point input needs float mode")
            if isinstance(value, float):
                return value
            return complex(float(value["re"]), float(value["im"]))
        raise SchemaError(path, f"not a number: {value!r}")

    @staticmethod
    def parse_int(value, path: str, minimum: Optional[int] = None) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(path, f"expected an integer, got {value!r}")
        if minimum is not None and value < minimum:
            raise SchemaError(path, f"must be at least {minimum}")
        return value

    def parse_int_list(self, value, path: str) -> Tuple[int, ...]:
        if not isinstance(value, list):
            raise SchemaError(path, "expected a list of integers")
        return tuple(self.parse_int(item, f"{path}[{i}]") for i, item in enumerate(value))

    def parse_weight(self, value, path: str) -> Tuple[int, ...]:
        parts = self.parse_int_list(value, path)
        if not parts:
            raise SchemaError(path, "a weight needs at least one part")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise SchemaError(path, "parts must be nonincreasing")
        return parts

    def parse_argument(self, value, path: str, allow_float: bool):
        """A scalar or a square matrix given as a list of rows."""
        if isinstance(value, list):
            if not value or not all(isinstance(row, list) and len(row) == len(value) for row in value):
                raise SchemaError(path, "matrices must be square lists of rows")
            return tuple(tuple(self.parse_value(entry, f"{path}[{i}][{j}]", allow_float)
                               for j, entry in enumerate(row)) for i, row in enumerate(value))
        return self.parse_value(value, path, allow_float)

    def parse_nested(self, value, path: str, allow_float: bool):
        """Option sections: numbers are parsed, strings that are not rationals stay strings."""
        if isinstance(value, dict):
            if set(value) in ({"num", "den"}, {"re", "im"}):
                return self.parse_value(value, path, allow_float)
            return {str(key): self.parse_nested(item, f"{path}.{key}", allow_float) for key, item in value.items()}
        if isinstance(value, list):
            return [self.parse_nested(item, f"{path}[{i}]", allow_float) for i, item in enumerate(value)]
        if isinstance(value, bool) or value is None:
            return value
        if isinstance(value, int):
            return value
        if isinstance(value, str) and not RATIONAL_PATTERN.match(value):
            return value
        return self.parse_value(value, path, allow_float)

    # ---------------------------------------------------------- structure

    def parse_group(self, document: dict) -> Tuple[Optional[GroupSpec], Tuple[RepSpec, ...]]:
        if self.col_data in document:
            return self.parse_named_data(document[self.col_data])
        if self.col_group not in document:
            if self.col_reps in document:
                raise SchemaError(f"$.{self.col_group}", "reps given without a group")
            return None, ()
        raw_group = document[self.col_group]
        path = f"$.{self.col_group}"
        if not isinstance(raw_group, dict):
            raise SchemaError(path, "expected a mapping")
        torus_rank = self.parse_int(raw_group.get(self.col_torus_rank, 0), f"{path}.{self.col_torus_rank}", 0)
        blocks = self.parse_int_list(raw_group.get(self.col_gl_blocks, []), f"{path}.{self.col_gl_blocks}")
        for i, size in enumerate(blocks):
            if not 1 <= size <= MAX_BLOCK_SIZE:
                raise SchemaError(f"{path}.{self.col_gl_blocks}[{i}]", f"block size must lie in 1..{MAX_BLOCK_SIZE}")
        group = GroupSpec(torus_rank, blocks)

        raw_reps = document.get(self.col_reps)
        if not isinstance(raw_reps, list) or not raw_reps:
            raise SchemaError(f"$.{self.col_reps}", "expected a nonempty list of representations")
        reps = []
        for index, raw in enumerate(raw_reps):
            rep_path = f"$.{self.col_reps}[{index}]"
            if not isinstance(raw, dict):
                raise SchemaError(rep_path, "expected a mapping")
            char = self.parse_int_list(raw.get(self.col_torus_char, []), f"{rep_path}.{self.col_torus_char}")
            if len(char) != torus_rank:
                raise SchemaError(f"{rep_path}.{self.col_torus_char}",
                                  f"expected {torus_rank} entries, got {len(char)}")
            block = raw.get(self.col_block)
            if block is not None:
                block = self.parse_int(block, f"{rep_path}.{self.col_block}", 0)
                if block >= len(blocks):
                    raise SchemaError(f"{rep_path}.{self.col_block}", f"no block {block}")
            twist = self.parse_int(raw.get(self.col_block_twist, 0), f"{rep_path}.{self.col_block_twist}")
            reps.append(RepSpec(char, block, twist))
        return group, tuple(reps)

    def parse_named_data(self, raw) -> Tuple[GroupSpec, Tuple[RepSpec, ...]]:
        path = f"$.{self.col_data}"
        if not isinstance(raw, dict) or "name" not in raw:
            raise SchemaError(path, "expected a mapping with a name")
        name = raw["name"]
        if name not in NAMED_DATA:
            raise SchemaError(f"{path}.name", f"unknown data {name!r}; known: {sorted(NAMED_DATA)}")
        options = {}
        for key in ("n", "p"):
            if key in raw:
                options[key] = self.parse_int(raw[key], f"{path}.{key}", 1)
        if "points" in raw:
            if not isinstance(raw["points"], list):
                raise SchemaError(f"{path}.points", "expected a list of integer vectors")
            options["points"] = [self.parse_int_list(p, f"{path}.points[{i}]") for i, p in enumerate(raw["points"])]
        try:
            group, reps = NAMED_DATA[name](options)
        except KeyError as e:
            raise SchemaError(path, f"data {name!r} needs option {e}")
        return group, tuple(reps)

    def parse(self, document: dict, mode: Optional[str] = None) -> SpecDocument:
        if document is None:
            document = {}
        if not isinstance(document, dict):
            raise SchemaError("$", "spec document must be a mapping")
        unknown = sorted(set(document) - set(self.known_fields))
        if unknown:
            raise SchemaError(f"$.{unknown[0]}", "unknown field")

        spec_mode = document.get(self.col_mode)
        if spec_mode is not None and spec_mode not in (MODE_EXACT, MODE_FLOAT):
            raise SchemaError(f"$.{self.col_mode}", f"mode must be {MODE_EXACT} or {MODE_FLOAT}")
        allow_float = (mode or spec_mode) == MODE_FLOAT

        group, reps = self.parse_group(document)
        spec = SpecDocument(group=group, reps=reps, mode=spec_mode)

        if self.col_s in document:
            raw = document[self.col_s]
            if not isinstance(raw, list):
                raise SchemaError(f"$.{self.col_s}", "expected a list")
            if group is not None and len(raw) != len(reps):
                raise SchemaError(f"$.{self.col_s}", f"expected {len(reps)} entries, got {len(raw)}")
            spec.s = tuple(self.parse_value(v, f"$.{self.col_s}[{i}]", allow_float) for i, v in enumerate(raw))
        if self.col_chi in document:
            raw = document[self.col_chi]
            if not isinstance(raw, list):
                raise SchemaError(f"$.{self.col_chi}", "expected a list")
            spec.chi = tuple(self.parse_value(v, f"$.{self.col_chi}[{i}]", False) for i, v in enumerate(raw))
        if self.col_backend in document:
            if document[self.col_backend] not in BACKENDS:
                raise SchemaError(f"$.{self.col_backend}", f"backend must be one of {BACKENDS}")
            spec.backend = document[self.col_backend]
        if self.col_truncation in document:
            spec.truncation = self.parse_int(document[self.col_truncation], f"$.{self.col_truncation}", 0)
        if self.col_seed in document:
            spec.seed = self.parse_int(document[self.col_seed], f"$.{self.col_seed}", 0)
        if self.col_point in document:
            raw = document[self.col_point]
            if not isinstance(raw, list):
                raise SchemaError(f"$.{self.col_point}", "expected one argument per representation")
            if group is not None and len(raw) != len(reps):
                raise SchemaError(f"$.{self.col_point}", f"expected {len(reps)} arguments, got {len(raw)}")
            spec.point = tuple(self.parse_argument(v, f"$.{self.col_point}[{i}]", allow_float)
                               for i, v in enumerate(raw))
        if self.col_branch in document:
            spec.branch = self.parse_value(document[self.col_branch], f"$.{self.col_branch}", True)
        if self.col_cobase in document:
            spec.cobase = self.parse_int_list(document[self.col_cobase], f"$.{self.col_cobase}")
        if self.col_weight in document:
            spec.weight = self.parse_weight(document[self.col_weight], f"$.{self.col_weight}")
        if self.col_x in document:
            raw = document[self.col_x]
            if isinstance(raw, list) and raw and isinstance(raw[0], list):
                spec.x = self.parse_argument(raw, f"$.{self.col_x}", allow_float)
            elif isinstance(raw, list):
                spec.x = tuple(self.parse_value(v, f"$.{self.col_x}[{i}]", allow_float) for i, v in enumerate(raw))
            else:
                raise SchemaError(f"$.{self.col_x}", "expected eigenvalues or a matrix")
        for section in self.option_sections:
            if section in document:
                raw = document[section]
                if not isinstance(raw, dict):
                    raise SchemaError(f"$.{section}", "expected a mapping")
                setattr(spec, section, self.parse_nested(raw, f"$.{section}", allow_float))
        return spec
