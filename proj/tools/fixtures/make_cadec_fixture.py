#!/usr/bin/env python3
"""Builds the CADEC-style standoff fixture and its expected statistics.

Reads tests/data/cadec_style/posts.src, writes one brat .txt/.ann pair per post
under tests/data/cadec_style/brat/ and the reference counts to
tests/data/cadec_style/expected_stats.json.

The reference counts do not share code with the C++ implementation:
syllables come from CMUdict (pyphen hyphenation for out-of-vocabulary
words), the other
counts from the small rule functions below.

    python3 tools/fixtures/make_cadec_fixture.py   # needs cmudict, pyphen
"""

import json
import pathlib
import re
import sys

import cmudict
import pyphen

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURE = ROOT / "tests" / "data" / "cadec_style"
MARK = re.compile(r"\[([^\]]+)\](?:\^(\d+))?|\{([^}]+)\}")


def parse_posts(path):
    posts, current = [], None
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            continue
        if line.startswith("== "):
            current = [line[3:].strip(), []]
            posts.append(current)
        elif line.strip() and current is not None:
            current[1].append(line.strip())
    return [(pid, " ".join(lines)) for pid, lines in posts]


def strip_markup(marked):
    """Returns (text, mentions); mention = (label, [(start, end), ...])."""
    text, pos = [], 0
    singles, groups = [], {}
    for m in MARK.finditer(marked):
        text.append(marked[pos:m.start()])
        start = sum(len(t) for t in text)
        surface = m.group(1) or m.group(3)
        text.append(surface)
        span = (start, start + len(surface))
        if m.group(3):
            singles.append(("Drug", [span]))
        elif m.group(2):
            key = m.group(2)
            if key not in groups:
                groups[key] = ("ADE", [])
                singles.append(groups[key])
            groups[key][1].append(span)
        else:
            singles.append(("ADE", [span]))
        pos = m.end()
    text.append(marked[pos:])
    return "".join(text), singles


def write_brat(pid, text, mentions, out_dir):
    (out_dir / f"{pid}.txt").write_text(text, encoding="utf-8")
    lines = []
    for i, (label, frags) in enumerate(mentions, 1):
        offsets = ";".join(f"{a} {b}" for a, b in frags)
        surface = " ".join(text[a:b] for a, b in frags)
        lines.append(f"T{i}\t{label} {offsets}\t{surface}")
    (out_dir / f"{pid}.ann").write_text("\n".join(lines) + ("\n" if lines else ""),
                                        encoding="utf-8")


CMU = cmudict.dict()
HYPHEN = pyphen.Pyphen(lang="en_US")


def syllables(word):
    if not word:
        return 0
    prons = CMU.get(word)
    if prons:
        return sum(ch[-1].isdigit() for ch in prons[0])
    if not any(ch.isalpha() for ch in word):
        return 1
    return len(HYPHEN.positions(word)) + 1


def words(text):
    for chunk in text.split():
        if any(ch.isalnum() for ch in chunk):
            yield re.sub(r"^\W+|\W+$", "", chunk).lower().replace("_", "")


def sentences(text):
    parts = re.split(r"(?:(?<!\d)\.|\.(?!\d)|[!?])+", text)
    n = sum(1 for p in parts if any(ch.isalnum() for ch in p))
    return max(n, 1 if text.split() else 0)


def stats(text, common):
    ws = list(words(text))
    return {
        "syllable_count": sum(syllables(w) for w in ws),
        "lexicon_count": len(ws),
        "sentence_count": sentences(text),
        "character_count": len(text),
        "difficult_words": len({w for w in ws if syllables(w) > 2 and w not in common}),
    }


def merged_ade_spans(mentions):
    frags = sorted(f for label, fs in mentions if label == "ADE" for f in fs)
    out = []
    for a, b in frags:
        if out and a < out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def main():
    common = {w.strip() for w in (ROOT / "data" / "common_words.txt").read_text().splitlines()
              if w.strip()}
    out_dir = FIXTURE / "brat"
    out_dir.mkdir(parents=True, exist_ok=True)
    for old in out_dir.iterdir():
        old.unlink()

    per_post, totals = {}, None
    ade_mentions = discontinuous = ade_spans = with_ade = 0
    for pid, marked in parse_posts(FIXTURE / "posts.src"):
        text, mentions = strip_markup(marked)
        write_brat(pid, text, mentions, out_dir)
        s = stats(text, common)
        per_post[pid] = s
        totals = dict(s) if totals is None else {k: totals[k] + v for k, v in s.items()}
        ades = [m for m in mentions if m[0] == "ADE"]
        ade_mentions += len(ades)
        discontinuous += sum(len(f) > 1 for _, f in ades)
        ade_spans += len(merged_ade_spans(mentions))
        with_ade += bool(ades)

    expected = {
        "documents": len(per_post),
        "with_ade": with_ade,
        "without_ade": len(per_post) - with_ade,
        "ade_mentions": ade_mentions,
        "discontinuous_mentions": discontinuous,
        "ade_spans": ade_spans,
        "totals": totals,
        "posts": per_post,
    }
    (FIXTURE / "expected_stats.json").write_text(json.dumps(expected, indent=1) + "\n")
    print(f"{len(per_post)} posts, {ade_mentions} ADE mentions, "
          f"{discontinuous} discontinuous", file=sys.stderr)


if __name__ == "__main__":
    main()
