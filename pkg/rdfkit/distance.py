"""String distance used for term confusability and namespace typo checks."""

import editdistance


def levenshtein(first: str, second: str) -> int:
    """Classic edit distance with unit-cost insert, delete and substitute"""
    return editdistance.eval(first, second)
