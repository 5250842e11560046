"""Shared fixtures: a 64-pair varied corpus and a local devowel helper."""

import random

from revowel.train import Pair

_DEVOWEL = {ord(c): None for c in "aeiouAEIOU"}

_WORDS = """
the a his her this cat dog bird friend teacher farmer child river garden
house window answer picture morning water paper stone finds wants watches
remembers carries follows paints holds brings keeps opens closes under over
near behind beside quiet bright small large warm cold old new good strange
""".split()


def devowel(text: str) -> str:
    return text.translate(_DEVOWEL)


def overfit_pairs() -> list[Pair]:
    """64 distinct word-salad sentences with distinct devowelled sources.

    No adjacent duplicate words: English essentially never repeats a word
    back-to-back, and degenerate "dog dog dog" contexts turn the fixture
    into a repetition-loop stress test instead of a memorization oracle.
    """
    rng = random.Random(0)
    targets: list[str] = []
    sources: set[str] = set()
    while len(targets) < 64:
        n = rng.randint(4, 8)
        words: list[str] = []
        while len(words) < n:
            w = rng.choice(_WORDS)
            if not words or words[-1] != w:
                words.append(w)
        words[0] = words[0].capitalize()
        sentence = " ".join(words) + "."
        source = devowel(sentence)
        if sentence not in targets and source not in sources:
            targets.append(sentence)
            sources.add(source)
    return [Pair(i, devowel(t), t) for i, t in enumerate(targets)]
