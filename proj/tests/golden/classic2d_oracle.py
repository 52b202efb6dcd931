"""Brute-force membership count for the classic2d scene at 256x256.

Plain scalar loop with the textbook box fold and sphere fold; writes the
pinned count used by the acceptance run.
"""
import json
import math
import sys

SIZE = 256
WIDTH = 8.0
F, H, L, S, D, ITER = 1.0, 1.0, 0.5, 2.0, 1024.0, 100


def fold(v):
    if v > F:
        return 2.0 * F - v
    if v < -F:
        return -2.0 * F - v
    return v


def member(cx, cy):
    x, y = cx, cy
    for _ in range(ITER):
        x, y = fold(x), fold(y)
        r2 = x * x + y * y
        r = math.sqrt(r2)
        if r < L:
            k = H * H / (L * L)
        elif r < H:
            k = H * H / r2
        else:
            k = 1.0
        x = x * k * S + cx
        y = y * k * S + cy
        if math.sqrt(x * x + y * y) > D:
            return False
    return True


def main():
    step = WIDTH / SIZE
    rows = []
    count = 0
    for j in range(SIZE):
        cy = (SIZE / 2.0 - (j + 0.5)) * step
        row = "".join("1" if member(((i + 0.5) - SIZE / 2.0) * step, cy) else "0" for i in range(SIZE))
        count += row.count("1")
        rows.append(row)
    json.dump({"width": SIZE, "height": SIZE, "in_set_pixels": count, "in_set_fraction": count / (SIZE * SIZE),
               "mask": rows}, sys.stdout, indent=0)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
