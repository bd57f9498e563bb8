#!/usr/bin/env python3
"""Cut a small WordNet database out of a full WordNet 3.0 directory.

Usage: wordnet_fixture.py WORDNET_DIR OUT_DIR

Keeps the listed lemmas with all their senses, plus holonym targets of those
senses. Pointers to synsets that are not kept are dropped and byte offsets are
recomputed so the output is a valid database on its own.
"""
import os
import sys

LEMMAS = {
    "noun": ["restaurant", "work", "car", "night", "city", "minute", "door", "trash",
             "house", "day", "morning", "year", "food", "service", "place", "friend",
             "store", "price", "staff", "hour", "week", "town", "wheel", "table", "bus",
             "dollar", "box", "water", "room", "people", "home", "shop"],
    "verb": ["work", "go", "take", "open", "ride", "eat", "come", "live", "buy", "walk",
             "wait", "recommend", "be", "have", "stay", "ask", "pay"],
    "adj": ["good", "great", "short", "friendly", "early", "late", "nice"],
    "adv": ["very", "soon", "back", "early"],
}
POS_CODE = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}
CODE_POS = {"n": "noun", "v": "verb", "a": "adj", "s": "adj", "r": "adv"}
HOLONYMS = {"#p", "#m", "#s"}


def read_index(path):
    out = {}
    with open(path) as f:
        for line in f:
            if line.startswith(" "):
                continue
            fields = line.split()
            out[fields[0]] = fields
    return out


def main():
    src, dst = sys.argv[1], sys.argv[2]
    os.makedirs(dst, exist_ok=True)
    index = {p: read_index(os.path.join(src, "index." + p)) for p in LEMMAS}
    data = {}
    for p in LEMMAS:
        with open(os.path.join(src, "data." + p), "rb") as f:
            data[p] = f.read()

    def data_line(p, off):
        raw = data[p]
        end = raw.index(b"\n", off)
        return raw[off:end].decode()

    keep = {p: set() for p in LEMMAS}
    for p, lemmas in LEMMAS.items():
        for lemma in lemmas:
            fields = index[p][lemma]
            n = int(fields[2])
            for off in fields[-n:]:
                keep[p].add(int(off))
    # holonym targets of kept senses
    for p in list(LEMMAS):
        for off in sorted(keep[p]):
            fields = data_line(p, off).split(" | ")[0].split()
            w = int(fields[3], 16)
            at = 4 + 2 * w
            for k in range(int(fields[at])):
                sym, toff, tpos = fields[at + 1 + 4 * k: at + 4 + 4 * k]
                if sym in HOLONYMS:
                    keep[CODE_POS[tpos]].add(int(toff))

    # lay out new offsets: a short header line, then synsets in old order
    header = "  fixture cut from WordNet 3.0, see LICENSE of the original database\n"
    new_off = {}
    lines = {}
    for p in LEMMAS:
        pos_lines = []
        for off in sorted(keep[p]):
            pos_lines.append((off, data_line(p, off)))
        lines[p] = pos_lines

    # offsets depend on line lengths which depend on offsets (fixed 8-digit width keeps it stable)
    def rewrite(p, line):
        body, _, gloss = line.partition(" | ")
        fields = body.split()
        w = int(fields[3], 16)
        at = 4 + 2 * w
        ptrs = []
        for k in range(int(fields[at])):
            sym, toff, tpos, st = fields[at + 1 + 4 * k: at + 5 + 4 * k]
            tp = CODE_POS[tpos]
            if int(toff) in new_off.get(tp, {}):
                ptrs.append(f"{sym} {new_off[tp][int(toff)]:08d} {tpos} {st}")
        rest = fields[at + 1 + 4 * int(fields[at]):]
        head = [f"{new_off[p][int(fields[0])]:08d}"] + fields[1:at]
        out = " ".join(head + [f"{len(ptrs):03d}"] + ptrs + rest)
        return f"{out} | {gloss.strip()}  \n"

    # first pass: offsets from rewritten lengths with placeholder offsets
    for _ in range(3):
        for p in LEMMAS:
            cur = len(header.encode())
            m = {}
            for off, line in lines[p]:
                m[off] = cur
                new_off.setdefault(p, {})
                tmp = new_off[p].get(off)
                new_off[p][off] = cur if tmp is None else tmp
                cur += len(rewrite(p, line).encode())
            new_off[p] = m
    for p in LEMMAS:
        with open(os.path.join(dst, "data." + p), "w") as f:
            f.write(header)
            for off, line in lines[p]:
                f.write(rewrite(p, line))
        with open(os.path.join(dst, "index." + p), "w") as f:
            f.write(header)
            for lemma in sorted(LEMMAS[p]):
                fields = index[p][lemma]
                n = int(fields[2])
                offs = [f"{new_off[p][int(o)]:08d}" for o in fields[-n:]]
                f.write(" ".join(fields[:-n] + offs) + "  \n")
        exc = os.path.join(src, p + ".exc")
        with open(exc) as f, open(os.path.join(dst, p + ".exc"), "w") as g:
            for line in f:
                parts = line.split()
                if len(parts) > 1 and parts[1] in LEMMAS[p]:
                    g.write(line)
    with open(os.path.join(src, "lexnames")) as f, open(os.path.join(dst, "lexnames"), "w") as g:
        g.write(f.read())

    # self-check: every offset points at a line starting with it
    for p in LEMMAS:
        raw = open(os.path.join(dst, "data." + p), "rb").read()
        for off in new_off[p].values():
            assert raw[off:off + 8].decode() == f"{off:08d}", (p, off)


if __name__ == "__main__":
    main()
