"""Scenario files: a JSON document with rationals written as ``"num/den"`` strings.

Example::

    {
      "schema": "tcrisk/scenario-1",
      "space": {"outcomes": ["w1", "w2", "w3"], "p0": ["1/3", "1/3", "1/3"]},
      "generators": [["3/5", "1/5", "1/5"], ["1/5", "3/5", "1/5"]],
      "filtrations": {"FA": [[["w1", "w2", "w3"]], [["w1"], ["w2", "w3"]], [["w1"], ["w2"], ["w3"]]]},
      "positions": {"X": ["1", "0", "0"]},
      "options": {"max_outcomes": 12, "max_generators": 12, "seed": 7}
    }

Validation errors carry a category and the line of the offending JSON node.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidObject, TcriskError
from .measure import Filtration, Measure, Partition, Position, Space, as_fraction
from .risk import RiskMeasure

SCHEMA = "tcrisk/scenario-1"
DEFAULT_OPTIONS = {"max_outcomes": 12, "max_generators": 12, "seed": 0}


class ScenarioError(TcriskError, ValueError):
    def __init__(self, category: str, message: str, line: int | None = None):
        self.category = category
        self.line = line
        where = f" (line {line})" if line else ""
        super().__init__(f"{category} error{where}: {message}")


@dataclass
class Scenario:
    space: Space
    generators: list[Measure]
    filtrations: dict[str, Filtration] = field(default_factory=dict)
    positions: dict[str, Position] = field(default_factory=dict)
    options: dict = field(default_factory=lambda: dict(DEFAULT_OPTIONS))

    @property
    def risk_measure(self) -> RiskMeasure:
        return RiskMeasure(self.space, tuple(self.generators))

    def filtration(self, name: str) -> Filtration:
        try:
            return self.filtrations[name]
        except KeyError:
            known = ", ".join(sorted(self.filtrations)) or "none"
            raise ScenarioError("reference", f"unknown filtration {name!r} (known: {known})") from None

    def position(self, name: str) -> Position:
        try:
            return self.positions[name]
        except KeyError:
            known = ", ".join(sorted(self.positions)) or "none"
            raise ScenarioError("reference", f"unknown position {name!r} (known: {known})") from None

    def outcome_set(self, spec: str) -> tuple[int, ...]:
        """Parse ``"w1,w3"`` into outcome indices."""
        try:
            return tuple(sorted({self.space.index(s.strip()) for s in spec.split(",") if s.strip()}))
        except KeyError as exc:
            raise ScenarioError("reference", str(exc.args[0])) from None


def _locate(text: str) -> dict[tuple, int]:
    """Map each JSON path to the character offset where its value starts."""
    dec = json.JSONDecoder()
    spots: dict[tuple, int] = {}

    def ws(i):
        while i < len(text) and text[i] in " \t\r\n":
            i += 1
        return i

    def walk(i, path):
        i = ws(i)
        spots[path] = i
        if text[i] == "{":
            i = ws(i + 1)
            if text[i] == "}":
                return i + 1
            while True:
                key, i = dec.raw_decode(text, ws(i))
                i = ws(i) + 1  # ':'
                i = ws(walk(i, path + (key,)))
                if text[i] == "}":
                    return i + 1
                i += 1  # ','
        if text[i] == "[":
            i = ws(i + 1)
            if text[i] == "]":
                return i + 1
            k = 0
            while True:
                i = ws(walk(i, path + (k,)))
                k += 1
                if text[i] == "]":
                    return i + 1
                i += 1
        _, end = dec.raw_decode(text, i)
        return end

    walk(0, ())
    return spots


class _Loader:
    def __init__(self, text: str):
        self.text = text
        try:
            self.doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError("syntax", exc.msg, exc.lineno) from None
        self.spots = _locate(text)

    def line(self, path: tuple) -> int | None:
        while path not in self.spots and path:
            path = path[:-1]
        off = self.spots.get(path)
        return None if off is None else self.text.count("\n", 0, off) + 1

    def fail(self, category: str, message: str, path: tuple):
        raise ScenarioError(category, message, self.line(path))

    def get(self, obj, key, kind, path):
        if not isinstance(obj, dict) or key not in obj:
            self.fail("schema", f"missing key {key!r}", path)
        val = obj[key]
        if not isinstance(val, kind):
            self.fail("schema", f"{key!r} must be a {getattr(kind, '__name__', kind)}", path + (key,))
        return val

    def rational(self, v, path):
        if isinstance(v, float):
            self.fail("schema", f"write {v!r} as an exact string such as \"1/3\"", path)
        try:
            return as_fraction(v)
        except (TypeError, ValueError) as exc:
            self.fail("schema", str(exc), path)

    def vector(self, v, n, path):
        if not isinstance(v, list):
            self.fail("schema", "expected a list of rationals", path)
        if len(v) != n:
            self.fail("invariant", f"expected {n} entries, got {len(v)}", path)
        return tuple(self.rational(x, path + (k,)) for k, x in enumerate(v))

    def load(self) -> Scenario:
        doc = self.doc
        if not isinstance(doc, dict):
            self.fail("schema", "top level must be an object", ())
        schema = doc.get("schema", SCHEMA)
        if schema != SCHEMA:
            self.fail("schema", f"unsupported schema {schema!r}", ("schema",))
        opts = dict(DEFAULT_OPTIONS)
        raw_opts = doc.get("options", {})
        if not isinstance(raw_opts, dict):
            self.fail("schema", "options must be an object", ("options",))
        for k, v in raw_opts.items():
            if k not in DEFAULT_OPTIONS:
                self.fail("schema", f"unknown option {k!r}", ("options", k))
            if not isinstance(v, int) or isinstance(v, bool):
                self.fail("schema", f"option {k!r} must be an integer", ("options", k))
            opts[k] = v

        sp = self.get(doc, "space", dict, ())
        outcomes = self.get(sp, "outcomes", list, ("space",))
        if not all(isinstance(o, str) for o in outcomes):
            self.fail("schema", "outcome labels must be strings", ("space", "outcomes"))
        p0 = self.vector(self.get(sp, "p0", list, ("space",)), len(outcomes), ("space", "p0"))
        try:
            space = Space(tuple(outcomes), p0)
        except InvalidObject as exc:
            self.fail("invariant", str(exc), ("space",))

        gens_raw = self.get(doc, "generators", list, ())
        if not gens_raw:
            self.fail("invariant", "at least one generator is required", ("generators",))
        gens = []
        for k, g in enumerate(gens_raw):
            path = ("generators", k)
            try:
                gens.append(Measure(space, self.vector(g, space.n, path)))
            except InvalidObject as exc:
                self.fail("invariant", str(exc), path)

        filts = {}
        raw_f = doc.get("filtrations", {})
        if not isinstance(raw_f, dict):
            self.fail("schema", "filtrations must be an object", ("filtrations",))
        for name, levels in raw_f.items():
            path = ("filtrations", name)
            if not isinstance(levels, list) or not levels:
                self.fail("schema", "a filtration is a nonempty list of partitions", path)
            parts = []
            for t, lev in enumerate(levels):
                lpath = path + (t,)
                if not isinstance(lev, list):
                    self.fail("schema", "a partition is a list of blocks", lpath)
                blocks = []
                for k, blk in enumerate(lev):
                    if not isinstance(blk, list) or not all(isinstance(s, str) for s in blk):
                        self.fail("schema", "a block is a list of outcome labels", lpath + (k,))
                    try:
                        blocks.append([space.index(s) for s in blk])
                    except KeyError as exc:
                        self.fail("reference", str(exc.args[0]), lpath + (k,))
                try:
                    parts.append(Partition(blocks, space.n))
                except InvalidObject as exc:
                    self.fail("invariant", str(exc), lpath)
            try:
                filts[name] = Filtration(tuple(parts))
            except InvalidObject as exc:
                self.fail("invariant", str(exc), path)

        positions = {}
        raw_p = doc.get("positions", {})
        if not isinstance(raw_p, dict):
            self.fail("schema", "positions must be an object", ("positions",))
        for name, vec in raw_p.items():
            positions[name] = Position(space, self.vector(vec, space.n, ("positions", name)))

        return Scenario(space, gens, filts, positions, opts)


def loads(text: str) -> Scenario:
    return _Loader(text).load()


def load(path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError("io", f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def to_dict(sc: Scenario) -> dict:
    sp = sc.space
    label = sp.outcomes.__getitem__
    return {
        "schema": SCHEMA,
        "space": {"outcomes": list(sp.outcomes), "p0": [str(v) for v in sp.p0]},
        "generators": [[str(v) for v in g.p] for g in sc.generators],
        "filtrations": {
            name: [[[label(i) for i in b] for b in lev.blocks] for lev in f.levels]
            for name, f in sorted(sc.filtrations.items())
        },
        "positions": {name: [str(v) for v in x.x] for name, x in sorted(sc.positions.items())},
        "options": dict(sorted(sc.options.items())),
    }


def dumps(sc: Scenario) -> str:
    return json.dumps(to_dict(sc), indent=2, ensure_ascii=False) + "\n"
