"""Test problems: the randomized class, fixture files and the expression language behind them."""
