#!/usr/bin/env python3
"""Writes a tiny WNdb-format noun database into tests/data/mini_wordnet.

Offsets are byte positions, as in the real files, so the output exercises the
offset check of the parser.
"""
import pathlib

HEADER = [
    "  1 This is a hand-made fragment in WordNet 3.0 database format.",
    "  2 It is used only by the unit tests.",
]

# key: (lex_filenum, lemmas, [(symbol, target_key)], gloss)
SYNSETS = {
    "entity": ("03", ["entity"], [], "that which is perceived to exist"),
    "object": ("03", ["object", "physical_object"], [("@", "entity")],
               "a tangible and visible entity"),
    "animal": ("05", ["animal", "beast"], [("@", "object")],
               "a living organism"),
    "cat": ("05", ["cat", "true_cat"], [("@", "animal")], "feline mammal"),
    "dog": ("05", ["dog", "domestic_dog"], [("@", "animal")],
            "a member of the genus Canis"),
    "artifact": ("06", ["artifact"], [("@", "object")],
                 "a man-made object"),
    "car": ("06", ["car", "auto", "automobile"], [("@", "artifact")],
            "a motor vehicle with four wheels"),
    "railcar": ("06", ["car", "railcar"], [("@", "artifact")],
                "a wheeled vehicle adapted to the rails of railroad"),
    "felix": ("18", ["Felix"], [("@i", "cat")], "a cartoon cat"),
}
ORDER = ["entity", "object", "animal", "cat", "dog", "artifact", "car",
         "railcar", "felix"]

# Mirror every upward pointer with its downward counterpart.
DOWN = {"@": "~", "@i": "~i"}


def pointers_of(key):
    out = list(SYNSETS[key][2])
    for other in ORDER:
        for sym, tgt in SYNSETS[other][2]:
            if tgt == key:
                out.append((DOWN[sym], other))
    return out


def render(key, offsets):
    lex, lemmas, _, gloss = SYNSETS[key]
    ptrs = pointers_of(key)
    fields = [offsets[key], lex, "n", "%02x" % len(lemmas)]
    for lemma in lemmas:
        fields += [lemma, "0"]
    fields.append("%03d" % len(ptrs))
    for sym, tgt in ptrs:
        fields += [sym, offsets[tgt], "n", "0000"]
    return " ".join(fields) + " | " + gloss + "  \n"


def main():
    out = pathlib.Path(__file__).resolve().parent / "mini_wordnet"
    out.mkdir(exist_ok=True)
    offsets = {k: "00000000" for k in ORDER}
    # Offsets are fixed width, so one layout pass fixes every position.
    for _ in range(2):
        pos = sum(len(h) + 1 for h in HEADER)
        new = {}
        for k in ORDER:
            new[k] = "%08d" % pos
            pos += len(render(k, offsets).encode())
        offsets = new
    data = "".join(h + "\n" for h in HEADER)
    data += "".join(render(k, offsets) for k in ORDER)
    (out / "data.noun").write_text(data)

    senses = {}
    for k in ORDER:
        for lemma in SYNSETS[k][1]:
            senses.setdefault(lemma.lower(), []).append(offsets[k])
    lines = [h + "\n" for h in HEADER]
    for lemma in sorted(senses):
        offs = senses[lemma]
        lines.append(" ".join([lemma, "n", str(len(offs)), "1", "@",
                               str(len(offs)), "0"] + offs) + "  \n")
    (out / "index.noun").write_text("".join(lines))


if __name__ == "__main__":
    main()
