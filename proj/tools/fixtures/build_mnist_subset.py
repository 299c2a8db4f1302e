#!/usr/bin/env python3
# Copyright 2026 The imac-sim Authors
# SPDX-License-Identifier: Apache-2.0
"""Builds the MNIST fixture from the `mnist` npm package (1.1.0).

The package ships 10000 MNIST digits (1000 per class) as JSON arrays of
784 floats. They are split per class into a seeded 80/20 train/test
partition and written as standard IDX files.

    npm pack mnist@1.1.0 && tar xzf mnist-1.1.0.tgz
    python3 build_mnist_subset.py package/src/digits data/mnist
"""
import argparse
import json
import pathlib
import struct

import numpy as np


def load_digits(digits_dir):
    images, labels = [], []
    for label in range(10):
        with open(pathlib.Path(digits_dir) / f"{label}.json") as f:
            flat = np.asarray(json.load(f)["data"], dtype=np.float64)
        pix = np.rint(flat * 255.0).clip(0, 255).astype(np.uint8).reshape(-1, 28, 28)
        images.append(pix)
        labels.append(np.full(len(pix), label, dtype=np.uint8))
    return images, labels


def write_idx(prefix, images, labels):
    with open(f"{prefix}-images-idx3-ubyte", "wb") as f:
        f.write(struct.pack(">IIII", 0x803, len(images), 28, 28))
        f.write(images.tobytes())
    with open(f"{prefix}-labels-idx1-ubyte", "wb") as f:
        f.write(struct.pack(">II", 0x801, len(labels)))
        f.write(labels.tobytes())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("digits_dir")
    ap.add_argument("out_dir")
    ap.add_argument("--test-fraction", type=float, default=0.2)
    ap.add_argument("--seed", type=int, default=20260)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    images, labels = load_digits(args.digits_dir)
    train_x, train_y, test_x, test_y = [], [], [], []
    for x, y in zip(images, labels):
        order = rng.permutation(len(x))
        n_test = int(round(len(x) * args.test_fraction))
        test_x.append(x[order[:n_test]])
        test_y.append(y[order[:n_test]])
        train_x.append(x[order[n_test:]])
        train_y.append(y[order[n_test:]])

    def interleave(xs, ys):
        x, y = np.concatenate(xs), np.concatenate(ys)
        order = rng.permutation(len(x))
        return x[order], y[order]

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_idx(out / "train", *interleave(train_x, train_y))
    write_idx(out / "t10k", *interleave(test_x, test_y))
    print(f"train {sum(map(len, train_x))}, test {sum(map(len, test_x))} -> {out}")


if __name__ == "__main__":
    main()
