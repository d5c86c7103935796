#!/usr/bin/env python3
"""Generate the bundled synthetic resume corpus and its gold annotations.

Gold spans are recorded while the text is being built (the offset of every
inserted entity is known exactly), so the gold standard is independent of
the annotation pipeline. After generating, the script runs the pipeline
over every document and refuses to write a corpus on which the two
disagree; the bundled corpus is therefore exact by construction.

Usage: python3 tools/make_corpus.py [--count N] [--check-only]
"""

import argparse
import random
import sys
from pathlib import Path

from resumekit.lexicon import load_lexicon
from resumekit.ontology import load_ontology
from resumekit.pipeline import (Annotator, SourceDocument, load_stopwords,
                                write_annotations)

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "src" / "resumekit" / "data"
CORPUS_DIR = DATA / "corpus"
GOLD_DIR = DATA / "gold"

SEED = 20260810

NAMES = ["ahmed", "feiza", "mohamed", "fatma", "ali", "salma",
         "nouha", "karim", "leila", "youssef", "amira", "sami"]
SURNAMES = ["trabelsi", "gharbi", "jaziri", "mansouri", "bouazizi",
            "haddad", "meddeb", "chaabane", "zouari", "belhadj"]
GENDERS = ["Féminin", "Masculin", "Femme", "Homme"]
NATIONALITIES = ["Tunisienne", "Française", "Marocaine", "Algérienne",
                 "Italienne", "Allemande", "Espagnole", "Britannique",
                 "Canadienne", "Sénégalaise", "tunisienne", "marocain"]
LANGUAGES = ["Français", "Anglais", "Arabe", "Allemand", "Espagnol",
             "Italien", "Russe", "Portugais"]
COMPETENCIES = ["Java", "Python", "SQL", "PHP", "Javascript",
                "Comptabilité", "Statistique", "Gestion de projet",
                "Data mining", "Marketing digital"]
TRAININGS = ["Master", "Licence", "Doctorat", "Baccalauréat", "Mastère", "MBA"]
INSTITUTES = ["Université de Tunis", "Université de Carthage",
              "Institut Supérieur de Gestion",
              "École Nationale d'Ingénieurs",
              "Institut Polytechnique", "Faculté des Sciences"]
STREETS = ["Rue de la Liberté", "Avenue Habib Bourguiba"]
CITIES = ["Tunis", "Sfax", "Sousse", "Bizerte"]
COMPANIES = ["Société Delta", "Groupe Vega", "Bureau Nova", "Agence Orion"]
FIELDS = ["informatique", "gestion", "finance", "commerce"]
MONTHS = ["janvier", "mars", "avril", "juin", "septembre",
          "octobre", "novembre", "Septembre", "Mars", "Juin"]
DOMAINS = ["example.tn", "mail.tn", "jobmail.com"]


class Builder:
    """Accumulates text and records each entity's span as it is placed."""

    def __init__(self):
        self.parts = []
        self.pos = 0
        self.gold = []

    def raw(self, text):
        self.parts.append(text)
        self.pos += len(text)

    def entity(self, class_name, text):
        self.gold.append((self.pos, self.pos + len(text), class_name, text))
        self.raw(text)

    def text(self):
        return "".join(self.parts)


def phone_number(rng):
    sep = rng.choice([" ", ".", "-"])
    digits = [str(rng.randrange(10)) for _ in range(8)]
    return "".join(digits[:2]) + sep + "".join(digits[2:5]) + sep + "".join(digits[5:])


def numeric_date(rng):
    return f"{rng.randrange(1, 29):02d}/{rng.randrange(1, 13):02d}/{rng.randrange(1970, 2000)}"


def textual_date(rng):
    return f"{rng.randrange(1, 29)} {rng.choice(MONTHS)} {rng.randrange(2005, 2023)}"


def build_resume(rng):
    b = Builder()
    name = rng.choice(NAMES)
    surname = rng.choice(SURNAMES)

    b.raw("Nom : ")
    b.raw(surname.upper())
    b.raw("\nPrénom : ")
    b.entity("Name", name.upper() if rng.random() < 0.5 else name.capitalize())
    b.raw("\nGenre : ")
    b.entity("Gender", rng.choice(GENDERS))
    b.raw("\nDate de naissance: ")
    b.entity("Date", numeric_date(rng))
    b.raw("\nNationalité : ")
    b.entity("Nationality", rng.choice(NATIONALITIES))
    b.raw("\nAdresse : ")
    b.raw(str(rng.randrange(1, 99)))
    b.raw(", ")
    b.entity("Address", rng.choice(STREETS))
    b.raw(", ")
    b.entity("Address", rng.choice(CITIES))
    b.raw("\nTéléphone : ")
    b.entity("Phone", phone_number(rng))
    b.raw("\nFax : ")
    b.entity("Fax", phone_number(rng))
    b.raw("\nEmail : ")
    b.entity("Email", f"{name}.{surname}@{rng.choice(DOMAINS)}")
    b.raw("\n\nFormation\n")
    b.entity("Training", rng.choice(TRAININGS))
    b.raw(f" en {rng.choice(FIELDS)}, ")
    b.entity("Institute", rng.choice(INSTITUTES))
    b.raw(", ")
    b.entity("Date", textual_date(rng))
    b.raw("\n\nExpérience professionnelle\nStage chez ")
    b.raw(rng.choice(COMPANIES))
    b.raw(", ")
    b.entity("Date", numeric_date(rng) if rng.random() < 0.5 else textual_date(rng))
    b.raw("\n\nCompétences\n")
    comp1, comp2 = rng.sample(COMPETENCIES, 2)
    b.entity("Competency", comp1)
    b.raw(", ")
    b.entity("Competency", comp2)
    b.raw("\n\nLangues\n")
    lang1, lang2 = rng.sample(LANGUAGES, 2)
    b.entity("Language", lang1)
    b.raw(", ")
    b.entity("Language", lang2)
    b.raw("\n")
    return b.text(), b.gold


def generate(count):
    rng = random.Random(SEED)
    documents = []
    for i in range(count):
        text, gold = build_resume(rng)
        documents.append((f"cv_{i:03d}", text, gold))
    return documents


def check(documents):
    """Cross-check constructed gold against the live pipeline."""
    schema = load_ontology(DATA / "default.ontology")
    lex = load_lexicon(DATA / "sample.lexicon")
    stopwords = load_stopwords(DATA / "stopwords.txt")
    annotator = Annotator(schema, lex, stopwords)
    failures = 0
    for doc_id, text, gold in documents:
        produced = annotator.annotate(SourceDocument(id=doc_id, text=text))
        got = sorted((a.start, a.end, a.class_name, a.matched_text) for a in produced)
        want = sorted(gold)
        if got != want:
            failures += 1
            print(f"{doc_id}: pipeline disagrees with constructed gold")
            for row in sorted(set(want) - set(got)):
                print(f"  gold only: {row}")
            for row in sorted(set(got) - set(want)):
                print(f"  pipeline only: {row}")
    return failures


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=24)
    parser.add_argument("--check-only", action="store_true")
    args = parser.parse_args()

    documents = generate(args.count)
    failures = check(documents)
    if failures:
        print(f"{failures} document(s) disagree; corpus not written")
        return 1
    if args.check_only:
        print(f"{len(documents)} document(s) agree with the pipeline")
        return 0

    CORPUS_DIR.mkdir(parents=True, exist_ok=True)
    GOLD_DIR.mkdir(parents=True, exist_ok=True)
    from resumekit.pipeline import Annotation
    for doc_id, text, gold in documents:
        (CORPUS_DIR / f"{doc_id}.txt").write_text(text, encoding="utf-8")
        annotations = [Annotation(start=s, end=e, class_name=c, matched_text=t)
                       for s, e, c, t in gold]
        (GOLD_DIR / f"{doc_id}.ann").write_text(write_annotations(annotations),
                                                encoding="utf-8")
    print(f"wrote {len(documents)} documents to {CORPUS_DIR} and gold to {GOLD_DIR}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
