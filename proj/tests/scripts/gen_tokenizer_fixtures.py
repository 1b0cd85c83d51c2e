"""Freeze sacremoses tokenizations as test fixtures.

Runs MosesTokenizer(escape=False, aggressive_dash_splits=False). English
"n't" is re-split PTB-style ("isn 't" -> "is n't") because the library keeps
"n't" whole after the stem.
"""
import sys
from pathlib import Path

from sacremoses import MosesTokenizer

EN = [
    "Europe's role is a coordinating role.",
    "He said: \"We can't stop now!\"",
    "The U.S. economy grew 3.5% in 2019, analysts say.",
    "Mr. Smith met Dr. Jones at 10:30 a.m. yesterday.",
    "It's a well-known fact that state-of-the-art models work.",
    "Prices rose from $1,000 to $1,250 (a 25% increase).",
    "She doesn't like it; they won't either...",
    "Is this the end? No, it isn't.",
    "The children's toys were in the 1990's boxes.",
    "Email me at john@example.com or call 555-1234.",
    "See pp. 12-15 and Art. 3 for details.",
    "I'll be there at 5 o'clock, I promise.",
    "We'd rather go home & rest.",
    "Wait -- what was that?",
    "The ratio was 3:2 and the score 1,5.",
    "Smith's, Jones' and the Browns' houses.",
    "He bought No. 5 and No. 7.",
    "Hello [world] {curly} <angle>",
    "They're going, aren't they?",
    "A sentence ending with an abbreviation etc.",
    "The temperature is -5 degrees.",
    "\"Quoted\" and 'single quoted' text.",
    "Numbers like 1.000.000 and 3,14 stay.",
    "Tabs\tand   multiple   spaces.",
    "Mixed CASE and ALL-CAPS words!",
]

DE = [
    "Morgen bis zweiundzwanzig Grad.",
    "Im Norden gibt es heute Regen, im Süden Sonne.",
    "Am 3. Oktober ist der Tag der Deutschen Einheit.",
    "Die Temperaturen liegen zwischen 5 und 12 Grad.",
    "Er sagte: \"Das ist gut!\"",
    "Z. B. gibt es viele Beispiele, usw.",
    "Das kostet 1.000,50 Euro.",
    "Dr. Müller kommt um 14.30 Uhr.",
    "Heute Nacht gibt's Frost.",
    "In der Nacht zum Sonntag regnet es im Nordwesten.",
    "Am Tag wehen schwache bis mäßige Winde aus Nordost.",
    "Die Aussichten: Freitag Regen, Samstag Schnee...",
    "Im Jahr 2014 war es wärmer (etwa 2 Grad).",
    "Wir sehen uns am Montag - vielleicht.",
    "Der 2. Platz ging an Nr. 7.",
]


def fix_nt(tokens):
    out = []
    for tok in tokens:
        if tok == "'t" and out and out[-1].lower().endswith("n") and len(out[-1]) > 1:
            stem = out.pop()
            out.append(stem[:-1])
            out.append(stem[-1] + "'t")
        else:
            out.append(tok)
    return out


def main(out_dir: Path) -> None:
    for lang, sents in (("en", EN), ("de", DE)):
        mt = MosesTokenizer(lang=lang)
        lines = []
        for s in sents:
            toks = mt.tokenize(s, escape=False, aggressive_dash_splits=False)
            if lang == "en":
                toks = fix_nt(toks)
            lines.append(s.replace("\t", "\\t") + "\t" + " ".join(toks))
        (out_dir / f"tokenizer_{lang}.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "data"))
