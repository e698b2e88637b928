"""Regenerates tests/data/text_metrics_golden.json.

Independent reference for RougeL, Meteor and the Porter stemmer, built on
NLTK's PorterStemmer in ORIGINAL_ALGORITHM mode. Run from the repo root:

    python3 tests/oracles/text_metrics_oracle.py
"""

import json
import re
from pathlib import Path

from nltk.stem.porter import PorterStemmer

STEMMER = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
ALPHA, BETA, GAMMA = 0.9, 3.0, 0.5


def tokens(text):
    return [t.decode("utf-8", "replace").lower() for t in re.findall(rb"[A-Za-z0-9\x80-\xff]+", text.encode())]


def lcs(a, b):
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i, x in enumerate(a, 1):
        for j, y in enumerate(b, 1):
            table[i][j] = table[i - 1][j - 1] + 1 if x == y else max(table[i - 1][j], table[i][j - 1])
    return table[-1][-1]


def rouge_l(pred, ref):
    p, r = tokens(pred), tokens(ref)
    if not p or not r:
        return 0.0
    n = lcs(p, r)
    if n == 0:
        return 0.0
    prec, rec = n / len(p), n / len(r)
    return 2 * prec * rec / (prec + rec)


def align(hyp, ref):
    used_h, used_r, pairs = set(), set(), []
    for keys_h, keys_r in ((hyp, ref), ([STEMMER.stem(t) for t in hyp], [STEMMER.stem(t) for t in ref])):
        for i, key in enumerate(keys_h):
            if i in used_h:
                continue
            for j, other in enumerate(keys_r):
                if j not in used_r and other == key:
                    used_h.add(i)
                    used_r.add(j)
                    pairs.append((i, j))
                    break
    pairs.sort()
    chunks = sum(1 for k, (i, j) in enumerate(pairs) if k == 0 or (i, j) != (pairs[k - 1][0] + 1, pairs[k - 1][1] + 1))
    return pairs, chunks


def meteor(pred, ref):
    h, r = tokens(pred), tokens(ref)
    if not h or not r:
        return 0.0
    pairs, chunks = align(h, r)
    m = len(pairs)
    if m == 0:
        return 0.0
    p, rc = m / len(h), m / len(r)
    fmean = p * rc / (ALPHA * p + (1 - ALPHA) * rc)
    return fmean * (1 - GAMMA * (chunks / m) ** BETA)


PAIRS = [
    ("reuters", "reuters"),
    ("the cat sat", "the dog sat"),
    ("", "reuters"),
    ("hello", "hello"),
    ("one two three four five six seven eight nine ten", "one two three four five six seven eight nine ten"),
    ("apples oranges", "bananas grapes"),
    ("The photo was taken by Associated Press", "Associated Press photographer"),
    ("running dogs", "the dog runs"),
    ("Manila, Philippines", "Philippines"),
    ("a US Navy plane over the Philippines", "US plane in the Philippines"),
    ("To mislead viewers about the flood.", "to mislead people about flooding in the city"),
    ("Getty Images; AFP", "AFP via Getty Images"),
    ("the the the", "the"),
    ("connection connected connecting", "connect"),
    ("Chicago, Illinois, USA", "Chicago"),
    ("generalizations and relational hopefulness", "generalize relate hopeful"),
    ("image shared to claim fraud in the 2020 election", "claim of election fraud in 2020"),
    ("Kyiv", "Kiev"),
    ("Reuters photographer Jane Doe", "Jane Doe (Reuters)"),
    ("protests in Paris", "Paris protest march"),
]

WORDS = """caresses ponies ties caress cats feed agreed plastered bled motoring sing conflated troubled sized
hopping tanned falling hissing fizzed failing filing happy sky relational conditional rational valenci hesitanci
digitizer conformabli radicalli differentli vileli analogousli vietnamization predication operator feudalism
decisiveness hopefulness callousness formaliti sensitiviti sensibiliti triplicate formative formalize electriciti
electrical hopeful goodness revival allowance inference airliner gyroscopic adjustable defensible irritant
replacement adjustment dependent adoption homologou communism activate angulariti homologous effective bowdlerize
probate rate cease controll roll generalizations oscillators is as running runs photographs photographer
flooding misleading election elections images fabricated manipulated yes ss abli logi analogy""".split()


def main():
    pairs = [{"pred": p, "ref": r, "rouge_l": rouge_l(p, r), "meteor": meteor(p, r)} for p, r in PAIRS]
    stems = {w: STEMMER.stem(w) for w in WORDS}
    out = Path(__file__).resolve().parents[1] / "data" / "text_metrics_golden.json"
    out.write_text(json.dumps({"pairs": pairs, "stems": stems}, indent=1, ensure_ascii=False) + "\n")
    print(f"wrote {len(pairs)} pairs and {len(stems)} stems to {out}")


if __name__ == "__main__":
    main()
