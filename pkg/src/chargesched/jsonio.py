"""JSON reading and writing for instances and solutions.

Instance documents look like::

    {"periods": 3, "supply": [1, 1, 1],
     "agents": [{"speed": "unbounded",
                 "triples": [{"value": 5, "deadline": 2, "demand": 2}]}]}

``speed`` is ``"unbounded"``, ``{"fixed": s}`` or ``{"gaps": [bool, ...]}``.
Non-integral values are read exactly as fractions.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .model import Agent, Fixed, Gaps, InputError, Instance, Solution, Triple, Unbounded


def parse_instance(data: bytes | str) -> Instance:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"not valid UTF-8 ({exc.reason} at byte {exc.start})") from None
    try:
        doc = json.loads(data, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return instance_from_dict(doc)


def instance_from_dict(doc) -> Instance:
    _expect_keys(doc, "", {"periods", "supply", "agents"})
    periods = _int(doc["periods"], "periods", minimum=1)
    supply = doc["supply"]
    if not isinstance(supply, list):
        raise InputError("expected a list", "supply")
    if len(supply) != periods:
        raise InputError(f"has {len(supply)} entries but periods is {periods}", "supply")
    supply = [_int(m, f"supply[{t}]") for t, m in enumerate(supply)]
    if not isinstance(doc["agents"], list):
        raise InputError("expected a list", "agents")
    agents = [_agent(a, f"agents[{i}]", periods) for i, a in enumerate(doc["agents"])]
    return Instance(periods, supply, agents)


def _agent(doc, where: str, periods: int) -> Agent:
    _expect_keys(doc, where, {"speed", "triples"})
    speed = _speed(doc["speed"], where + ".speed", periods)
    raw = doc["triples"]
    if not isinstance(raw, list) or not raw:
        raise InputError("expected a nonempty list", where + ".triples")
    triples = []
    for k, tr in enumerate(raw):
        at = f"{where}.triples[{k}]"
        _expect_keys(tr, at, {"value", "deadline", "demand"})
        value = tr["value"]
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)) or value < 0:
            raise InputError(f"must be a nonnegative number, got {value!r}", at + ".value")
        deadline = _int(tr["deadline"], at + ".deadline", minimum=1)
        if deadline > periods:
            raise InputError(f"deadline {deadline} outside 1..{periods}", at + ".deadline")
        demand = _int(tr["demand"], at + ".demand")
        triples.append(Triple(_plain(value), deadline, demand))
    try:
        return Agent(triples, speed)
    except InputError as exc:
        # model errors carry agent-relative paths
        raise InputError(str(exc).split(": ", 1)[-1], f"{where}.{exc.field}") from None


def _speed(doc, where: str, periods: int):
    if doc == "unbounded":
        return Unbounded()
    if isinstance(doc, dict) and len(doc) == 1:
        if "fixed" in doc:
            return Fixed(_int(doc["fixed"], where + ".fixed", minimum=1))
        if "gaps" in doc:
            mask = doc["gaps"]
            if not isinstance(mask, list) or len(mask) != periods:
                raise InputError(f"expected a list of {periods} booleans", where + ".gaps")
            for t, flag in enumerate(mask):
                if not isinstance(flag, bool):
                    raise InputError(f"expected a boolean, got {flag!r}", f"{where}.gaps[{t}]")
            return Gaps(mask)
    raise InputError('expected "unbounded", {"fixed": int} or {"gaps": [bool]}', where)


def _int(x, where: str, minimum: int = 0) -> int:
    if isinstance(x, Fraction):
        raise InputError(f"must be an integer, got {float(x)!r}", where)
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"must be an integer, got {x!r}", where)
    if x < minimum:
        raise InputError(f"must be >= {minimum}, got {x}", where)
    return x


def _expect_keys(doc, where: str, keys: set) -> None:
    if not isinstance(doc, dict):
        raise InputError("expected an object", where or "document")
    missing = keys - doc.keys()
    if missing:
        raise InputError(f"missing field(s) {sorted(missing)}", where or "document")
    extra = doc.keys() - keys
    if extra:
        raise InputError(f"unknown field(s) {sorted(extra)}", where or "document")


def _plain(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def number_out(x):
    """JSON-friendly number: ints stay ints, fractions become floats."""
    x = _plain(x)
    return float(x) if isinstance(x, Fraction) else x


def instance_to_dict(inst: Instance) -> dict:
    agents = []
    for a in inst.agents:
        if isinstance(a.speed, Fixed):
            speed = {"fixed": a.speed.speed}
        elif isinstance(a.speed, Gaps):
            speed = {"gaps": list(a.speed.available)}
        else:
            speed = "unbounded"
        triples = [{"value": number_out(v), "deadline": d, "demand": w} for v, d, w in a.triples]
        agents.append({"speed": speed, "triples": triples})
    return {"periods": inst.periods, "supply": list(inst.supply), "agents": agents}


def emit_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), sort_keys=False)


def solution_to_dict(sol: Solution) -> dict:
    return {
        "welfare": number_out(sol.welfare),
        "allocation": [list(row) for row in sol.allocation.amounts],
        "satisfied": [list(flags) for flags in sol.satisfied],
    }
