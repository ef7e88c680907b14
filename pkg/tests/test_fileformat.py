from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from ddkit.fileformat import FileFormatError, dumps, load, loads, pair_data, pair_from_data
from ddkit.gaction import ComponentMap
from ddkit.instances import enumerate_diagrams

from conftest import SMALL

DIAGRAMS = Path(__file__).resolve().parent.parent / "diagrams"
SINGLES = [s.diagram for s in enumerate_diagrams(SMALL)]


@pytest.mark.parametrize("path", sorted(DIAGRAMS.glob("*.json")), ids=lambda p: p.name)
def test_shipped_files_load(path):
    df = load(str(path))
    assert loads(dumps(df.diagram, df.cover, df.phi)) == df


@given(st.sampled_from(SINGLES))
def test_roundtrip(d):
    assert loads(dumps(d)).diagram == d


def test_pair_roundtrip():
    d = SINGLES[-1]
    f = ComponentMap.identity(len(d.diagram.components))
    data = json.loads(json.dumps(pair_data(d, d, f, "x")))
    assert pair_from_data(data) == (d, d, f)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ('{\n  "components": [["D", 5]],\n  "mu": [2]\n}', 3, "not a special node"),
        ('{\n  "components": [["A", 3]],\n  "mu": [0, 2]\n}', 3, "already meets mu"),
        ('{\n  "components": [["Q", 3]]\n}', 2, "unknown type tag"),
        ('{\n  "components": [["B", 2]],\n  "generators": ["(0 1)"]\n}', 3, "does not preserve"),
        ('{\n  "components": [["A", 2]],\n  "generators": ["(0 5)"]\n}', 3, "generators"),
        ('{\n  "components": [["A", 2]],\n  "colour": 1\n}', 3, "unknown key"),
        ('{\n  "components": [["A", 2]],\n', 3, "invalid JSON"),
        ('{"mu": []}', 1, "components: missing"),
    ],
)
def test_errors_are_line_anchored(text, line, fragment):
    with pytest.raises(FileFormatError) as e:
        loads(text)
    msg = str(e.value)
    assert msg.startswith(f"line {line}:") and fragment in msg


def test_dumps_is_stable():
    d = SINGLES[0]
    assert dumps(d) == dumps(loads(dumps(d)).diagram)
