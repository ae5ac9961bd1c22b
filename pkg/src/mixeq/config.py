"""Enumeration budget and default seed."""

import os

from .errors import BudgetError, InputError

DEFAULT_BUDGET = 2 ** 24
DEFAULT_SEED = 0xEC5
BUDGET_ENV = "MT_BUDGET"


def enumeration_budget(override=None):
    """Words allowed per enumeration call; ``override`` beats ``$MT_BUDGET`` beats the default."""
    if override is not None:
        return int(override)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{BUDGET_ENV}={env!r} is not an integer") from None
    return DEFAULT_BUDGET


def check_budget(n_words, budget=None, what="word enumeration"):
    limit = enumeration_budget(budget)
    if n_words > limit:
        raise BudgetError(
            f"{what} needs {n_words} words, budget is {limit} "
            f"(raise it with budget= or ${BUDGET_ENV})",
            budget=limit, requested=n_words)
    return limit
