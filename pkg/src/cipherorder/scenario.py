"""Scenario files: named groups, ciphers and product expressions, as JSON.

A scenario is a JSON object like::

    {
      "message_count": 3,
      "group": "sym(3)",
      "ciphers": {
        "X": {"uniform_on": "gen([[1,0,2]])"},
        "Y": {"deterministic": [0, 2, 1]},
        "Z": {"coset": {"rep": [0, 2, 1], "subgroup": "gen([[1,0,2]])"}}
      },
      "products": {"T": ["X", "Y", "Z"], "D": ["X", "Z"]},
      "compare": [["T", "D"]],
      "q_max": 2
    }

Group and subset specs use the named constructors ``sym(m)``, ``cyclic(m)``,
``stab(m, t)`` (the full symmetric group on {0..m-1} fixing point t) and
``gen([[...], ...])`` (the group generated by explicit image arrays).
Product expressions list cipher names with the rightmost applied first.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .dist import (
    CipherDist,
    convolve_all,
    deterministic,
    translate,
    uniform_on_elements,
)
from .groups import (
    DEFAULT_CAP,
    GroupSizeError,
    GroupTable,
    closure,
    cyclic_group,
    stabilizer,
    symmetric_group,
)
from .perms import Permutation


class ScenarioError(ValueError):
    """A malformed scenario; the message names the offending field."""


_SYM_RE = re.compile(r"sym\(\s*(\d+)\s*\)\Z")
_CYCLIC_RE = re.compile(r"cyclic\(\s*(\d+)\s*\)\Z")
_STAB_RE = re.compile(r"stab\(\s*(\d+)\s*,\s*(\d+)\s*\)\Z")
_GEN_RE = re.compile(r"gen\((.*)\)\Z", re.DOTALL)


def parse_permutation(value: Any, *, where: str, degree: int | None = None) -> Permutation:
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise ScenarioError(f"{where}: a permutation must be a list of ints")
    try:
        p = Permutation(tuple(value))
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from None
    if degree is not None and p.degree != degree:
        raise ScenarioError(
            f"{where}: degree {p.degree} does not match message count {degree}"
        )
    return p


def parse_group_spec(
    spec: str, *, where: str, degree: int | None = None, cap: int = DEFAULT_CAP
) -> GroupTable:
    """Build a group from a named-constructor string."""
    if not isinstance(spec, str):
        raise ScenarioError(f"{where}: group spec must be a string")
    text = spec.strip()
    try:
        if m := _SYM_RE.match(text):
            group = symmetric_group(int(m.group(1)), cap=cap)
        elif m := _CYCLIC_RE.match(text):
            group = cyclic_group(int(m.group(1)))
        elif m := _STAB_RE.match(text):
            size, fixed = int(m.group(1)), int(m.group(2))
            if fixed >= size:
                raise ScenarioError(f"{where}: stab point {fixed} out of range")
            group = stabilizer(symmetric_group(size, cap=cap), (fixed,))
        elif m := _GEN_RE.match(text):
            try:
                words = json.loads(m.group(1))
            except json.JSONDecodeError as exc:
                raise ScenarioError(f"{where}: bad gen(...) payload: {exc}") from None
            if not isinstance(words, list) or not words:
                raise ScenarioError(f"{where}: gen(...) needs a list of permutations")
            gens = [
                parse_permutation(w, where=f"{where}.gen[{i}]", degree=degree)
                for i, w in enumerate(words)
            ]
            group = closure(gens, cap=cap)
        else:
            raise ScenarioError(f"{where}: unrecognized group spec {spec!r}")
    except GroupSizeError as exc:
        raise ScenarioError(f"{where}: {exc}") from None
    if degree is not None and group.degree != degree:
        raise ScenarioError(
            f"{where}: group degree {group.degree} does not match "
            f"message count {degree}"
        )
    return group


def parse_cipher_spec(
    spec: Any, group: GroupTable, *, where: str
) -> CipherDist:
    """Build a distribution from a constructor object.

    Supported constructors: ``{"uniform_on": <group spec>}``,
    ``{"deterministic": <perm>}`` and ``{"coset": {"rep": <perm>,
    "subgroup": <group spec>}}`` (uniform on the left coset rep*H).
    """
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ScenarioError(f"{where}: a cipher spec is a one-key object")
    kind, payload = next(iter(spec.items()))
    if kind == "uniform_on":
        sub = parse_group_spec(payload, where=f"{where}.uniform_on", degree=group.degree)
        _require_inside(sub, group, where=f"{where}.uniform_on")
        return uniform_on_elements(group, sub)
    if kind == "deterministic":
        p = parse_permutation(payload, where=f"{where}.deterministic", degree=group.degree)
        if p not in group:
            raise ScenarioError(f"{where}.deterministic: {p} is not in the group")
        return deterministic(group, p)
    if kind == "coset":
        if not isinstance(payload, dict) or set(payload) != {"rep", "subgroup"}:
            raise ScenarioError(f"{where}.coset: needs 'rep' and 'subgroup'")
        rep = parse_permutation(payload["rep"], where=f"{where}.coset.rep", degree=group.degree)
        if rep not in group:
            raise ScenarioError(f"{where}.coset.rep: {rep} is not in the group")
        sub = parse_group_spec(
            payload["subgroup"], where=f"{where}.coset.subgroup", degree=group.degree
        )
        _require_inside(sub, group, where=f"{where}.coset.subgroup")
        return translate(rep, uniform_on_elements(group, sub))
    raise ScenarioError(f"{where}: unknown cipher constructor {kind!r}")


def _require_inside(sub: GroupTable, group: GroupTable, *, where: str) -> None:
    if not sub.is_subgroup_of(group):
        raise ScenarioError(f"{where}: not a subgroup of the scenario group")


@dataclass(frozen=True)
class Scenario:
    """A parsed and fully resolved scenario."""

    message_count: int
    group: GroupTable
    ciphers: dict[str, CipherDist]
    products: dict[str, tuple[str, ...]]
    compare: tuple[tuple[str, str], ...]
    q_max: int

    def distribution(self, name: str) -> CipherDist:
        """The distribution of a named cipher or product expression."""
        if name in self.ciphers:
            return self.ciphers[name]
        if name in self.products:
            return convolve_all([self.ciphers[f] for f in self.products[name]])
        raise ScenarioError(f"unknown cipher or product {name!r}")


def parse_scenario(text: str, cap: int = DEFAULT_CAP) -> Scenario:
    """Parse and validate scenario text, resolving every named object."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ScenarioError("scenario must be a JSON object")

    m = raw.get("message_count")
    if not isinstance(m, int) or m < 1:
        raise ScenarioError("message_count: must be a positive integer")
    group = parse_group_spec(raw.get("group", f"sym({m})"), where="group", degree=m, cap=cap)

    ciphers: dict[str, CipherDist] = {}
    raw_ciphers = raw.get("ciphers", {})
    if not isinstance(raw_ciphers, dict):
        raise ScenarioError("ciphers: must be an object of name -> spec")
    for name, spec in raw_ciphers.items():
        ciphers[name] = parse_cipher_spec(spec, group, where=f"ciphers.{name}")

    products: dict[str, tuple[str, ...]] = {}
    raw_products = raw.get("products", {})
    if not isinstance(raw_products, dict):
        raise ScenarioError("products: must be an object of name -> factor list")
    for name, factors in raw_products.items():
        if name in ciphers:
            raise ScenarioError(f"products.{name}: name already used by a cipher")
        if (
            not isinstance(factors, list)
            or not factors
            or not all(isinstance(f, str) for f in factors)
        ):
            raise ScenarioError(
                f"products.{name}: must be a nonempty list of cipher names"
            )
        for f in factors:
            if f not in ciphers:
                raise ScenarioError(f"products.{name}: unknown cipher {f!r}")
        products[name] = tuple(factors)

    known = set(ciphers) | set(products)
    compare: list[tuple[str, str]] = []
    raw_compare = raw.get("compare", [])
    if not isinstance(raw_compare, list):
        raise ScenarioError("compare: must be a list of [left, right] pairs")
    for i, pair in enumerate(raw_compare):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ScenarioError(f"compare[{i}]: must be a [left, right] pair")
        for name in pair:
            if name not in known:
                raise ScenarioError(f"compare[{i}]: unknown name {name!r}")
        compare.append((pair[0], pair[1]))

    q_max = raw.get("q_max", 1)
    if not isinstance(q_max, int) or not 0 <= q_max <= m:
        raise ScenarioError(f"q_max: must be an integer in 0..{m}")

    return Scenario(
        message_count=m,
        group=group,
        ciphers=ciphers,
        products=products,
        compare=tuple(compare),
        q_max=q_max,
    )
