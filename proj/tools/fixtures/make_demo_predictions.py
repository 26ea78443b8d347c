#!/usr/bin/env python3
"""Writes toy prediction files for config/demo.ini.

Predictions are gold spans of the CADEC-style fixture, perturbed per model
and seed (dropped, truncated or spurious spans), plus one generative run.

    python3 tools/fixtures/make_demo_predictions.py
"""

import json
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parents[2]
BRAT = ROOT / "tests" / "data" / "cadec_style" / "brat"
OUT = ROOT / "config" / "demo"

# model -> (drop rate, truncate rate, spurious rate)
MODELS = {
    "BERT": (0.25, 0.20, 0.10),
    "BioBERT": (0.20, 0.15, 0.10),
    "BERTweet": (0.10, 0.10, 0.05),
    "EnDR-BERT": (0.12, 0.10, 0.05),
    "GPT-2": (0.35, 0.25, 0.15),
    "XLNet": (0.30, 0.20, 0.15),
}
SEEDS = range(3)


def gold_spans(ann):
    spans = []
    for line in ann.splitlines():
        _, label_offsets, _ = line.split("\t")
        label, offsets = label_offsets.split(" ", 1)
        if label != "ADE":
            continue
        for frag in offsets.split(";"):
            a, b = map(int, frag.split())
            spans.append((a, b))
    merged = []
    for a, b in sorted(spans):
        if merged and a < merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    return merged


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = []
    for txt in sorted(BRAT.glob("*.txt")):
        docs.append((txt.stem, txt.read_text(encoding="utf-8"),
                     gold_spans(txt.with_suffix(".ann").read_text(encoding="utf-8"))))
    for model, (drop, trunc, spur) in MODELS.items():
        lines = []
        for seed in SEEDS:
            rng = random.Random(f"{model}/{seed}")
            for doc_id, text, gold in docs:
                pred = []
                for a, b in gold:
                    if rng.random() < drop:
                        continue
                    if rng.random() < trunc and b - a > 3:
                        b -= 2
                    pred.append([a, b])
                if rng.random() < spur:
                    a = rng.randrange(0, max(1, len(text) - 5))
                    if all(b <= a or a + 4 <= s for s, b in pred):
                        pred.append([a, a + 4])
                pred.sort()
                lines.append(json.dumps({"doc_id": doc_id, "seed": seed, "spans": pred}))
        (OUT / f"{model}.jsonl").write_text("\n".join(lines) + "\n")

    lines = []
    for seed in SEEDS:
        rng = random.Random(f"T5/{seed}")
        for doc_id, text, gold in docs:
            items = [text[a:b] for a, b in gold if rng.random() > 0.3]
            if rng.random() < 0.2:
                items.append("dizziness")
            lines.append(json.dumps({"doc_id": doc_id, "seed": seed, "output": "; ".join(items)}))
    (OUT / "T5.jsonl").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
