"""Load the template-style expected values stored under tests/golden."""

import itertools
import re
from pathlib import Path

from intervalhopf.algebra import AlgebraElement, parse_element

GOLDEN = Path(__file__).parent / "golden"


def load(name: str, n: int = 4) -> AlgebraElement:
    total = AlgebraElement.zero()
    for raw in (GOLDEN / name).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        letters = sorted(set(re.findall(r"[kl]", line)))
        for values in itertools.product(range(1, n + 1), repeat=len(letters)):
            text = line
            for letter, v in zip(letters, values):
                text = text.replace(letter, str(v))
            total = total + parse_element(text)
    return total
