"""Buys every item from the first seller that stocks it."""
import sys

tokens = iter(sys.stdin.read().split())
n = int(next(tokens))
m = int(next(tokens))
next(tokens)  # K
for _ in range(n):
    next(tokens)  # weights
prices = [[int(next(tokens)) for _ in range(n)] for _ in range(m)]
choice = []
for i in range(n):
    choice.append(str(next(j for j in range(m) if prices[j][i] >= 0)))
print(" ".join(choice))
