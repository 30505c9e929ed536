import pathlib

import pytest

CORPUS = pathlib.Path(__file__).parent / "corpus"

APPENDIX_PROGRAMS = {
    1: "q <- not q.",
    2: "q <- not p.\np <- not q.",
    3: "q <- q.",
    4: "q <- p.\np <- q.",
    5: "q <- not p.",
    6: "q <- p.",
    7: "q <- not q.\nq <- q.",
    8: "q <- not q and q.",
}

EXAMPLE_PROGRAMS = [
    "win.fl", "win_quantified.fl", "reach.fl", "reach_uncertain.fl",
    "barber.fl", "barber_multi.fl", "even.fl", "yale.fl", "yale_variant.fl",
]


@pytest.fixture(scope="session")
def corpus_dir() -> pathlib.Path:
    return CORPUS


def corpus_text(name: str) -> str:
    return (CORPUS / name).read_text(encoding="utf-8")


def all_corpus_names() -> list[str]:
    return sorted(p.name for p in CORPUS.glob("*.fl"))
