"""Connects every terminal straight to terminal 0 (a star, no Steiner points)."""
import sys

tokens = sys.stdin.read().split()
n = int(tokens[0])
print(0)
print(n - 1)
for t in range(1, n):
    print(f"0 {t}")
