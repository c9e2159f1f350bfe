#!/usr/bin/env python3
"""
Generador de corpus de diagramas (thetas de trenza con pesos balanceados).

Escribe un JSON canónico por diagrama en --out, listo para los comandos de
manage.py:

    python generate_diagrams.py --seed 7 --count 50 --out corpus/
    python manage.py alex corpus/theta_0003.json --k 1

Opciones útiles:
- --seed: reproducible (mismo seed => mismos archivos byte a byte)
- --untouched: la hebra del extremo este no cruza nada (arista contraíble)
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path

import django


@dataclass(frozen=True)
class CorpusConfig:
    seed: int
    count: int
    max_crossings: int
    max_strands: int
    weight_bound: int
    untouched: bool
    out: Path


def setup_django() -> None:
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "Alexander.settings")
    sys.path.insert(0, str(Path(__file__).resolve().parent))
    django.setup()


def write_corpus(cfg: CorpusConfig) -> int:
    from Graphs.diagram import validate
    from Graphs.generators import random_braid_theta
    from Graphs.serializers import diagram_to_data, dumps

    cfg.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(cfg.seed)
    width = max(4, len(str(cfg.count)))
    written = 0
    for i in range(cfg.count):
        d = random_braid_theta(
            rng,
            max_crossings=cfg.max_crossings,
            max_strands=cfg.max_strands,
            untouched=cfg.untouched,
            weight_bound=cfg.weight_bound,
        )
        report = validate(d)
        if report:
            print(f"[WARN] diagrama {i} inválido, se omite: {report[0]}")
            continue
        path = cfg.out / f"theta_{i:0{width}d}.json"
        path.write_text(dumps(diagram_to_data(d)) + "\n", encoding="utf-8")
        written += 1
    return written


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-crossings", type=int, default=8)
    ap.add_argument("--max-strands", type=int, default=4)
    ap.add_argument("--weight-bound", type=int, default=3)
    ap.add_argument("--untouched", action="store_true")
    ap.add_argument("--out", default="corpus")
    args = ap.parse_args()

    cfg = CorpusConfig(
        seed=args.seed,
        count=args.count,
        max_crossings=args.max_crossings,
        max_strands=args.max_strands,
        weight_bound=args.weight_bound,
        untouched=args.untouched,
        out=Path(args.out),
    )
    setup_django()
    written = write_corpus(cfg)
    print(f"[OK] {written} diagramas en {cfg.out} (seed={cfg.seed})")


if __name__ == "__main__":
    main()
