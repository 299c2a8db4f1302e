#!/usr/bin/env python3
# Copyright 2026 The imac-sim Authors
# SPDX-License-Identifier: Apache-2.0
"""Trains the LeNet-5 fixture on the MNIST IDX subset and writes IMTF weights.

    python3 train_lenet.py data/mnist data/lenet5_mnist.imtf

The network matches nets/lenet5.json: conv(1->6, 5x5, pad 2), maxpool,
conv(6->16, 5x5), maxpool, fc 400-120-84-10, ReLU after every hidden layer.
"""
import argparse
import pathlib
import struct

import numpy as np
import torch
import torch.nn as nn
import torch.nn.functional as F


def read_idx(prefix):
    with open(f"{prefix}-images-idx3-ubyte", "rb") as f:
        magic, n, rows, cols = struct.unpack(">IIII", f.read(16))
        assert magic == 0x803
        x = np.frombuffer(f.read(), dtype=np.uint8).reshape(n, 1, rows, cols)
    with open(f"{prefix}-labels-idx1-ubyte", "rb") as f:
        magic, m = struct.unpack(">II", f.read(8))
        assert magic == 0x801 and m == n
        y = np.frombuffer(f.read(), dtype=np.uint8)
    return torch.from_numpy(x.astype(np.float32) / 255.0), torch.from_numpy(y.astype(np.int64))


class LeNet5(nn.Module):
    def __init__(self):
        super().__init__()
        self.conv1 = nn.Conv2d(1, 6, 5, padding=2)
        self.conv2 = nn.Conv2d(6, 16, 5)
        self.fc1 = nn.Linear(400, 120)
        self.fc2 = nn.Linear(120, 84)
        self.fc3 = nn.Linear(84, 10)

    def forward(self, x):
        x = F.max_pool2d(F.relu(self.conv1(x)), 2)
        x = F.max_pool2d(F.relu(self.conv2(x)), 2)
        x = x.flatten(1)
        x = F.relu(self.fc1(x))
        x = F.relu(self.fc2(x))
        return self.fc3(x)


def shift(x, gen, max_shift=2):
    """Random translation by up to max_shift pixels, zero fill."""
    n = x.shape[0]
    pad = F.pad(x, (max_shift,) * 4)
    dx = torch.randint(0, 2 * max_shift + 1, (n,), generator=gen)
    dy = torch.randint(0, 2 * max_shift + 1, (n,), generator=gen)
    out = torch.empty_like(x)
    h, w = x.shape[2:]
    for i in range(n):
        out[i] = pad[i, :, dy[i]:dy[i] + h, dx[i]:dx[i] + w]
    return out


def write_imtf(path, tensors):
    with open(path, "wb") as f:
        f.write(b"IMTF")
        f.write(struct.pack("<II", 1, len(tensors)))
        for name in sorted(tensors):
            arr = np.ascontiguousarray(tensors[name], dtype="<f4")
            raw = name.encode()
            f.write(struct.pack("<H", len(raw)) + raw)
            f.write(struct.pack("<BB", 0, arr.ndim))
            f.write(struct.pack(f"<{arr.ndim}I", *arr.shape))
            f.write(arr.tobytes())


def evaluate(model, x, y):
    model.eval()
    with torch.no_grad():
        return (model(x).argmax(1) == y).float().mean().item()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("data_dir")
    ap.add_argument("out")
    ap.add_argument("--epochs", type=int, default=40)
    ap.add_argument("--batch", type=int, default=64)
    ap.add_argument("--lr", type=float, default=1e-3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    torch.manual_seed(args.seed)
    torch.set_num_threads(1)
    gen = torch.Generator().manual_seed(args.seed)
    root = pathlib.Path(args.data_dir)
    train_x, train_y = read_idx(root / "train")
    test_x, test_y = read_idx(root / "t10k")

    model = LeNet5()
    opt = torch.optim.Adam(model.parameters(), lr=args.lr)
    sched = torch.optim.lr_scheduler.CosineAnnealingLR(opt, args.epochs)
    for epoch in range(args.epochs):
        model.train()
        order = torch.randperm(len(train_x), generator=gen)
        for i in range(0, len(order), args.batch):
            idx = order[i:i + args.batch]
            xb = shift(train_x[idx], gen)
            loss = F.cross_entropy(model(xb), train_y[idx])
            opt.zero_grad()
            loss.backward()
            opt.step()
        sched.step()
        print(f"epoch {epoch + 1}: test accuracy {evaluate(model, test_x, test_y):.4f}", flush=True)

    tensors = {k: v.detach().numpy() for k, v in model.state_dict().items()}
    write_imtf(args.out, tensors)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
