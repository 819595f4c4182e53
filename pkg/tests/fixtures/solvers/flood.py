"""Floods stdout past the output cap."""
import sys

sys.stdin.read()
chunk = b"0" * (1 << 20)
for _ in range(80):  # 80 MiB
    sys.stdout.buffer.write(chunk)
