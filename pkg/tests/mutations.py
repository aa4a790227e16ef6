"""Single-field mutations of certificate JSON, for tamper tests."""

from __future__ import annotations

import copy
import json
import random
import re
from fractions import Fraction

from lcforge.certificate import canonical_bytes, digest_of

# free-text provenance carries no checkable content
INERT = re.compile(r"^\$\.hypotheses\.declared\.")
# raising an unreached cap leaves a valid certificate, so resealed edits
# push caps below any usable value instead
CAPS = re.compile(r"^\$\.config\.(max_r|max_retries|step_limit|matrix_retries)$")


def _paths(obj, path="$"):
    yield path, obj
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _paths(obj[k], f"{path}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _paths(v, f"{path}[{i}]")


def _get_parent(root, path):
    parts = re.findall(r"\.([^.\[]+)|\[(\d+)\]", path)
    node = root
    for key, idx in parts[:-1]:
        node = node[key] if key else node[int(idx)]
    key, idx = parts[-1]
    return node, (key if key else int(idx))


def _bump(value):
    if isinstance(value, bool):
        return not value
    if isinstance(value, int):
        return value + 1
    if value is None:
        return 0
    if isinstance(value, str):
        if re.fullmatch(r"-?\d+/\d+", value):
            q = Fraction(value) + 1
            return f"{q.numerator}/{q.denominator}"
        if re.fullmatch(r"\d+", value):
            return str(int(value) + 1)
        return value + "~"
    if isinstance(value, list):
        return value[:-1] if value else [0]
    if isinstance(value, dict):
        return {k: v for k, v in list(value.items())[1:]} if value else {"extra": 1}
    raise TypeError(value)


def mutants(data: bytes, count: int, seed: int = 0, reseal: bool = False):
    """Yield ``(path, mutated_bytes)`` for ``count`` distinct single-field edits.

    With ``reseal`` the digest is recomputed, so only semantic checks can
    catch the edit; inert free-text fields are skipped in that mode.
    """
    obj = json.loads(data)
    paths = [p for p, _ in _paths(obj) if p not in ("$", "$.digest")]
    if reseal:
        paths = [p for p in paths if not INERT.match(p)]
    rng = random.Random(seed)
    chosen = rng.sample(paths, min(count, len(paths)))
    for path in chosen:
        m = copy.deepcopy(obj)
        parent, key = _get_parent(m, path)
        parent[key] = -1 if reseal and CAPS.match(path) else _bump(parent[key])
        if reseal:
            m["digest"] = digest_of(m)
        yield path, canonical_bytes(m)
