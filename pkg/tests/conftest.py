import os

import pytest

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")
NEGATIVE_DIR = os.path.join(os.path.dirname(__file__), "negative")

# Every example with generated units: (corpus name, has datatype unit).
GENERATED_EXAMPLES = [
    ("fmla", True),
    ("grnd", True),
    ("nat", True),
    ("lists", True),
    ("evenodd", True),
    ("exp", True),
    ("bits", True),
    ("dnf_lr", False),  # multi-clause constructor: no datatype interface
]


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


def assert_matches_golden(example: str, filename: str, text: str) -> None:
    """Byte-for-byte comparison; set UPDATE_GOLDENS=1 to regenerate."""
    path = os.path.join(GOLDEN_DIR, example, filename)
    if os.environ.get("UPDATE_GOLDENS"):
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as f:
            f.write(text)
    with open(path) as f:
        expected = f.read()
    assert text == expected, f"{example}/{filename} differs from golden file"
