#!/usr/bin/env python3
"""Regenerate the shipped acceptance corpus under ``corpus/``.

    python scripts/make_corpus.py [--out corpus]

405 G(nA, nB, p) instances (nA, nB in [4, 12], p in 0.1..0.9), 50 semi-regular
and 60 planted instances.  Everything is seeded, so rerunning reproduces the
same files.
"""

import argparse
import random
from fractions import Fraction
from pathlib import Path

from mkvc.graph import save_graph
from mkvc.instancegen import gen_gnp, gen_planted, gen_semiregular

GNP_PER_P = 45
N_SEMIREGULAR = 50
N_PLANTED = 60


def semiregular_params():
    out = []
    for na in range(2, 13):
        for nb in range(2, 13):
            for da in range(1, nb + 1):
                if (na * da) % nb:
                    continue
                db = na * da // nb
                if 1 <= db <= na:
                    out.append((na, nb, da, db))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="corpus")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("*.bkvc"):
        old.unlink()

    rnd = random.Random(20141)
    seed = 1000
    for tenths in range(1, 10):
        p = Fraction(tenths, 10)
        for _ in range(GNP_PER_P):
            na, nb = rnd.randint(4, 12), rnd.randint(4, 12)
            seed += 1
            g = gen_gnp(na, nb, p, seed)
            name = f"gnp_na{na:02d}_nb{nb:02d}_p{tenths}_s{seed}.bkvc"
            save_graph(g, out / name, [f"mkvc gen gnp na={na} nb={nb} p={p} seed={seed}"])

    params = semiregular_params()
    for i in range(N_SEMIREGULAR):
        na, nb, da, db = params[rnd.randrange(len(params))]
        seed += 1
        g = gen_semiregular(na, nb, da, db, seed)
        name = f"semi_na{na:02d}_nb{nb:02d}_da{da:02d}_db{db:02d}_s{seed}.bkvc"
        save_graph(g, out / name, [f"mkvc gen semiregular na={na} nb={nb} da={da} db={db} seed={seed}"])

    made = 0
    while made < N_PLANTED:
        na, nb = rnd.randint(4, 12), rnd.randint(4, 12)
        k1 = rnd.randint(0, 3)
        k2 = rnd.randint(k1, 4)
        if rnd.random() < 0.5:
            k1, k2 = k2, k1
        room = min(nb - k2 if k1 else nb, na - k1 if k2 else na)
        if room < 1 or k1 > na or k2 > nb:
            continue
        d_hub = rnd.randint(1, room)
        d_noise = rnd.randint(0, 2)
        seed += 1
        inst = gen_planted(na, nb, k1, k2, d_hub, d_noise, seed)
        name = f"planted_na{na:02d}_nb{nb:02d}_k{k1}-{k2}_s{seed}.bkvc"
        planted = " ".join(str(v) for v in sorted(inst.planted))
        save_graph(inst.graph, out / name, [
            f"mkvc gen planted na={na} nb={nb} k1={k1} k2={k2} d_hub={d_hub} d_noise={d_noise} seed={seed}",
            f"planted k={inst.k} {planted}",
        ])
        made += 1


if __name__ == "__main__":
    main()
