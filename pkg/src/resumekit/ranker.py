"""Requirement-profile scoring and candidate ranking (pipeline Phase 5).

A profile is a weighted list of ontology classes, each optionally pinned
to one instance label; a resume satisfies a requirement when it carries a
matching annotation. Scores sum the satisfied weights.
"""

from dataclasses import dataclass

from resumekit.errors import FileFormatError, UnknownClassError
from resumekit.textnorm import fold


@dataclass(frozen=True)
class Requirement:
    """One employer criterion: class, optional label, positive weight."""

    class_name: str
    needle: str = ""
    weight: float = 1.0


@dataclass(frozen=True)
class RequirementProfile:
    requirements: tuple[Requirement, ...] = ()


@dataclass(frozen=True)
class RankedResume:
    """A resume's score against a profile plus the satisfied indices."""

    resume_id: str
    score: float
    satisfied: tuple[int, ...] = ()


def load_profile(path):
    """Load ``class<TAB>needle<TAB>weight`` lines; empty needle = any."""
    requirements = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise FileFormatError(path, line_no,
                                      "expected class<TAB>needle<TAB>weight")
            try:
                weight = float(parts[2])
            except ValueError:
                raise FileFormatError(path, line_no,
                                      f"weight {parts[2]!r} is not a number")
            if not weight > 0:
                raise FileFormatError(path, line_no, "weight must be positive")
            requirements.append(Requirement(class_name=parts[0].strip(),
                                            needle=parts[1].strip(),
                                            weight=weight))
    return RequirementProfile(requirements=tuple(requirements))


def validate_profile(profile, schema):
    """Raise UnknownClassError for any requirement class the schema lacks."""
    for req in profile.requirements:
        if req.class_name not in schema.classes:
            raise UnknownClassError(req.class_name)


def score_resume(annotations, profile, resume_id=""):
    """Score one annotated resume against a profile.

    A requirement is satisfied when some annotation has the required
    class and, if a needle is set, the same folded matched text.
    """
    satisfied = []
    score = 0.0
    for idx, req in enumerate(profile.requirements):
        needle = fold(req.needle) if req.needle else ""
        for ann in annotations:
            if ann.class_name != req.class_name:
                continue
            if needle and fold(ann.matched_text) != needle:
                continue
            satisfied.append(idx)
            score += req.weight
            break
    return RankedResume(resume_id=resume_id, score=score,
                        satisfied=tuple(satisfied))


def rank(resumes, profile):
    """Rank (id, annotations) pairs: score descending, ties by id ascending."""
    ranked = [score_resume(annotations, profile, resume_id=rid)
              for rid, annotations in resumes]
    ranked.sort(key=lambda r: (-r.score, r.resume_id))
    return ranked
