#!/usr/bin/env python3
"""Uniform-parameter samples of a unit semidisk traced counterclockwise.

The domain is the upper half of the unit disk shifted down by 4/(3*pi), so
that its centroid sits at the origin. The trace starts at the right corner,
follows the arc, then the diameter. Within each side the position eases in
and out over a fraction w of the parameter so that both corners are
approached with vanishing speed.
"""
import argparse
import json
import math


def ease(u, w):
    total = 1.0 - 2.0 * w / 3.0
    if u < w:
        x = u / w
        v = w * (x * x - x ** 3 / 3.0)
    elif u > 1.0 - w:
        x = (1.0 - u) / w
        v = total - w * (x * x - x ** 3 / 3.0)
    else:
        v = 2.0 * w / 3.0 + (u - w)
    return v / total


def semidisk(count, w=0.1):
    shift = 4.0 / (3.0 * math.pi)
    arc_fraction = math.pi / (math.pi + 2.0)
    pts = []
    for j in range(count):
        x = j / count
        if x < arc_fraction:
            v = ease(x / arc_fraction, w)
            z = complex(math.cos(math.pi * v), math.sin(math.pi * v))
        else:
            v = ease((x - arc_fraction) / (1.0 - arc_fraction), w)
            z = complex(-1.0 + 2.0 * v, 0.0)
        z -= 1j * shift
        pts.append([z.real, z.imag])
    return pts


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=256)
    p.add_argument("--ease", type=float, default=0.1)
    p.add_argument("--out", default="semidisk_samples.json")
    a = p.parse_args()
    with open(a.out, "w") as f:
        json.dump({"samples": semidisk(a.count, a.ease)}, f, indent=1)


if __name__ == "__main__":
    main()
