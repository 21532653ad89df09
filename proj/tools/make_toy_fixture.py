#!/usr/bin/env python3
"""Regenerates the toy fixture in data/toy/ (network, embeddings, frequencies).

Each child vector is its parent's vector plus a per-class offset and a little
noise, so the difference vectors cluster by class.
"""
import pathlib
import numpy as np

FAMILIES = {
    # class: [(parent, parent_pos, child, child_pos), ...]
    "perfectivization": [("živit", "V", "oživit", "V"), ("volat", "V", "zavolat", "V"),
                         ("platit", "V", "zaplatit", "V"), ("kreslit", "V", "nakreslit", "V"),
                         ("vařit", "V", "uvařit", "V"), ("mýt", "V", "umýt", "V"),
                         ("budit", "V", "probudit", "V")],
    "nominalization": [("volat", "V", "volání", "N"), ("dělat", "V", "dělání", "N"),
                       ("kreslit", "V", "kreslení", "N"), ("vařit", "V", "vaření", "N"),
                       ("učit", "V", "učení", "N"), ("chytat", "V", "chytání", "N")],
    "patient": [("živit", "V", "živený", "A"), ("vařit", "V", "vařený", "A"),
                ("učit", "V", "učený", "A"), ("kreslit", "V", "kreslený", "A"),
                ("cvičit", "V", "cvičený", "A"), ("sušit", "V", "sušený", "A")],
    "diminutization": [("strom", "N", "stromek", "N"), ("sloup", "N", "sloupek", "N"),
                       ("kout", "N", "koutek", "N"), ("plot", "N", "plotek", "N"),
                       ("balík", "N", "balíček", "N"), ("rohlík", "N", "rohlíček", "N")],
    "possessive": [("bratr", "N", "bratrův", "A"), ("Petr", "N", "Petrův", "A"),
                   ("Jan", "N", "Janův", "A"), ("máma", "N", "mámin", "A"),
                   ("teta", "N", "tetin", "A"), ("soused", "N", "sousedův", "A")],
}
# Pairs that the pipeline drops: unmapped type, missing embedding, rare lemma.
EXTRA = [("psát", "V", "písař", "N"), ("dělat", "V", "předělat", "V"), ("hrát", "V", "vyhrát", "V")]
MISSING = {"předělat"}
RARE = {"vyhrát"}
DIM = 8


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20190801)

    ids, rows = {}, []

    def node(lemma, pos, parent=None):
        if lemma in ids:
            return ids[lemma]
        ids[lemma] = len(ids)
        rows.append((ids[lemma], lemma, pos, "" if parent is None else str(parent)))
        return ids[lemma]

    vectors = {}
    offsets = {cls: rng.normal(size=DIM) * 1.5 for cls in FAMILIES}
    for cls, pairs in FAMILIES.items():
        for parent, ppos, child, cpos in pairs:
            pid = node(parent, ppos)
            node(child, cpos, pid)
            vectors.setdefault(parent, rng.normal(size=DIM))
            vectors[child] = vectors[parent] + offsets[cls] + rng.normal(size=DIM) * 0.1
    for parent, ppos, child, cpos in EXTRA:
        pid = node(parent, ppos)
        node(child, cpos, pid)
        vectors.setdefault(parent, rng.normal(size=DIM))
        if child not in MISSING:
            vectors[child] = vectors[parent] + rng.normal(size=DIM)

    with open(out / "network.tsv", "w", encoding="utf-8") as f:
        for i, lemma, pos, parent in rows:
            f.write(f"{i}\t{lemma}\t{lemma}\t{pos}\t{parent}\n")
    with open(out / "embeddings.txt", "w", encoding="utf-8") as f:
        f.write(f"{len(vectors)} {DIM}\n")
        for token, vec in vectors.items():
            f.write(token + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")
    with open(out / "freq.tsv", "w", encoding="utf-8") as f:
        for k, token in enumerate(sorted(ids)):
            f.write(f"{token}\t{3 if token in RARE else 10 + k}\n")


if __name__ == "__main__":
    main()
