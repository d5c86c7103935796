"""EUROPASS-shaped resume assembly and XML (de)serialization.

Annotations route to resume slots through a fixed class-to-slot table
(subclasses inherit their nearest routed ancestor's slot). The XML layout
mirrors the EUROPASS CV sections: PersonalInformation, WorkExperience,
EducationTraining, Skills, AdditionalInformation, Annexes. The exporter
and :func:`from_xml` are exact inverses on the exporter's image.
"""

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from resumekit.errors import LayoutError, UnknownClassError
from resumekit.ontology import ancestors
from resumekit.textnorm import fold

PERSONAL_FIELDS = ("first_name", "surname", "address", "telephone", "fax",
                   "email", "nationality", "date_of_birth", "gender")

SKILL_CATEGORIES = ("language", "technical", "social_organisational",
                    "computer", "artistic", "driving", "other")

# A Date this early in the document, or this close after a birth keyword,
# is the date of birth.
PERSONAL_BLOCK_CHARS = 300
_BIRTH_WINDOW = 40
_BIRTH_KEYWORDS = ("naissance", "birth", "born")

_PERSONAL_TAGS = {
    "first_name": "FirstName", "surname": "Surname", "address": "Address",
    "telephone": "Telephone", "fax": "Fax", "email": "Email",
    "nationality": "Nationality", "date_of_birth": "DateOfBirth",
    "gender": "Gender",
}
_SKILL_TAGS = {
    "language": "Language", "technical": "Technical",
    "social_organisational": "SocialOrganisational", "computer": "Computer",
    "artistic": "Artistic", "driving": "Driving", "other": "Other",
}
_WORK_TAGS = {"occupation": "Occupation", "date": "Date",
              "activities": "Activities"}
_EDU_TAGS = {"contents": "Contents", "date": "Date", "skills": "Skills",
             "level": "Level"}


@dataclass
class WorkEntry:
    occupation: str | None = None
    date: str | None = None
    activities: str | None = None


@dataclass
class EducationEntry:
    contents: str | None = None
    date: str | None = None
    skills: str | None = None
    level: str | None = None


@dataclass
class EuropassResume:
    """Structured resume mirroring the EUROPASS CV sections."""

    personal: dict = field(default_factory=dict)
    work_experience: list = field(default_factory=list)
    education: list = field(default_factory=list)
    skills: dict = field(default_factory=dict)
    additional: list = field(default_factory=list)
    annexes: list = field(default_factory=list)

    def __post_init__(self):
        unknown = set(self.personal) - set(PERSONAL_FIELDS)
        if unknown:
            raise ValueError(f"unknown personal fields: {sorted(unknown)}")
        self.personal = {name: self.personal.get(name) for name in PERSONAL_FIELDS}
        unknown = set(self.skills) - set(SKILL_CATEGORIES)
        if unknown:
            raise ValueError(f"unknown skill categories: {sorted(unknown)}")
        self.skills = {cat: list(self.skills.get(cat, [])) for cat in SKILL_CATEGORIES}

    @classmethod
    def empty(cls):
        return cls()


def _route_class(class_name, schema):
    """Nearest routed class walking from ``class_name`` up its ancestors."""
    routed = {"Name", "Gender", "Nationality", "Date", "Address", "Phone",
              "Fax", "Email", "Institute", "Training", "Language", "Competency"}
    if class_name in routed:
        return class_name
    for ancestor in ancestors(schema, class_name):
        if ancestor in routed:
            return ancestor
    return None


def _is_birth_date(ann, doc):
    if ann.start < PERSONAL_BLOCK_CHARS:
        return True
    window = fold(doc.text[max(0, ann.start - _BIRTH_WINDOW):ann.start])
    return any(keyword in window for keyword in _BIRTH_KEYWORDS)


def assemble(doc, annotations, schema):
    """Fill a EuropassResume from a document's annotations.

    Names go to first_name then surname by document order; the first
    birth-qualifying Date becomes date_of_birth and later dates attach to
    the nearest education entry (or open a work-experience entry); single
    personal slots keep their first value. Text is never invented: every
    populated value is some annotation's matched text.
    """
    resume = EuropassResume()
    ordered = sorted(annotations, key=lambda a: (a.start, a.end, a.class_name))

    names = []
    dates = []
    # (entry, source annotation midpoint) for date attachment
    education_sources = []

    for ann in ordered:
        if ann.class_name not in schema.classes:
            raise UnknownClassError(ann.class_name)
        route = _route_class(ann.class_name, schema)
        if route == "Name":
            names.append(ann)
        elif route == "Date":
            dates.append(ann)
        elif route == "Gender":
            resume.personal["gender"] = resume.personal["gender"] or ann.matched_text
        elif route == "Nationality":
            resume.personal["nationality"] = (resume.personal["nationality"]
                                              or ann.matched_text)
        elif route == "Address":
            resume.personal["address"] = resume.personal["address"] or ann.matched_text
        elif route == "Phone":
            resume.personal["telephone"] = (resume.personal["telephone"]
                                            or ann.matched_text)
        elif route == "Fax":
            resume.personal["fax"] = resume.personal["fax"] or ann.matched_text
        elif route == "Email":
            resume.personal["email"] = resume.personal["email"] or ann.matched_text
        elif route in ("Institute", "Training"):
            entry = EducationEntry(contents=ann.matched_text)
            resume.education.append(entry)
            education_sources.append((entry, (ann.start + ann.end) / 2))
        elif route == "Language":
            resume.skills["language"].append(ann.matched_text)
        elif route == "Competency":
            resume.skills["technical"].append(ann.matched_text)
        else:
            resume.additional.append(ann.matched_text)

    if names:
        resume.personal["first_name"] = names[0].matched_text
    if len(names) > 1:
        resume.personal["surname"] = names[1].matched_text

    for ann in dates:
        if resume.personal["date_of_birth"] is None and _is_birth_date(ann, doc):
            resume.personal["date_of_birth"] = ann.matched_text
            continue
        midpoint = (ann.start + ann.end) / 2
        open_entries = [(abs(mid - midpoint), i) for i, (entry, mid)
                        in enumerate(education_sources) if entry.date is None]
        if open_entries:
            _, i = min(open_entries)
            education_sources[i][0].date = ann.matched_text
        else:
            resume.work_experience.append(WorkEntry(date=ann.matched_text))

    return resume


def _leaf(parent, tag, text):
    elem = ET.SubElement(parent, tag)
    if text is not None:
        elem.text = text
    return elem


def to_xml(resume):
    """Serialize to UTF-8 XML text; byte-identical for equal resumes."""
    root = ET.Element("EuropassCV")

    personal = ET.SubElement(root, "PersonalInformation")
    for name in PERSONAL_FIELDS:
        _leaf(personal, _PERSONAL_TAGS[name], resume.personal.get(name))

    work = ET.SubElement(root, "WorkExperience")
    for entry in resume.work_experience:
        exp = ET.SubElement(work, "Experience")
        _leaf(exp, "Occupation", entry.occupation)
        _leaf(exp, "Date", entry.date)
        _leaf(exp, "Activities", entry.activities)

    education = ET.SubElement(root, "EducationTraining")
    for entry in resume.education:
        edu = ET.SubElement(education, "Education")
        _leaf(edu, "Contents", entry.contents)
        _leaf(edu, "Date", entry.date)
        _leaf(edu, "Skills", entry.skills)
        _leaf(edu, "Level", entry.level)

    skills = ET.SubElement(root, "Skills")
    for category in SKILL_CATEGORIES:
        for item in resume.skills.get(category, []):
            _leaf(skills, _SKILL_TAGS[category], item)

    additional = ET.SubElement(root, "AdditionalInformation")
    for item in resume.additional:
        _leaf(additional, "Item", item)

    annexes = ET.SubElement(root, "Annexes")
    for item in resume.annexes:
        _leaf(annexes, "Item", item)

    ET.indent(root, space="  ")
    return ('<?xml version="1.0" encoding="UTF-8"?>\n'
            + ET.tostring(root, encoding="unicode") + "\n")


def _check_leaf(elem):
    if len(elem):
        raise LayoutError(f"element <{elem.tag}> must not have children")
    return elem.text


def _read_entry(elem, tags, factory):
    values = {}
    for child in elem:
        for attr, tag in tags.items():
            if child.tag == tag:
                values[attr] = _check_leaf(child)
                break
        else:
            raise LayoutError(f"unknown element <{child.tag}> in <{elem.tag}>")
    return factory(**values)


def from_xml(xml):
    """Parse XML produced by :func:`to_xml` (or hand-written to match).

    Raises xml.etree.ElementTree.ParseError for malformed XML and
    LayoutError for any element outside the documented layout.
    """
    root = ET.fromstring(xml)
    if root.tag != "EuropassCV":
        raise LayoutError(f"expected root <EuropassCV>, got <{root.tag}>")

    resume = EuropassResume()
    seen = set()
    tag_to_field = {tag: name for name, tag in _PERSONAL_TAGS.items()}
    tag_to_category = {tag: cat for cat, tag in _SKILL_TAGS.items()}

    for section in root:
        if section.tag in seen:
            raise LayoutError(f"duplicate section <{section.tag}>")
        seen.add(section.tag)
        if section.tag == "PersonalInformation":
            for child in section:
                name = tag_to_field.get(child.tag)
                if name is None:
                    raise LayoutError(f"unknown element <{child.tag}> in "
                                      "<PersonalInformation>")
                resume.personal[name] = _check_leaf(child)
        elif section.tag == "WorkExperience":
            for child in section:
                if child.tag != "Experience":
                    raise LayoutError(f"unknown element <{child.tag}> in "
                                      "<WorkExperience>")
                resume.work_experience.append(
                    _read_entry(child, _WORK_TAGS, WorkEntry))
        elif section.tag == "EducationTraining":
            for child in section:
                if child.tag != "Education":
                    raise LayoutError(f"unknown element <{child.tag}> in "
                                      "<EducationTraining>")
                resume.education.append(
                    _read_entry(child, _EDU_TAGS, EducationEntry))
        elif section.tag == "Skills":
            for child in section:
                category = tag_to_category.get(child.tag)
                if category is None:
                    raise LayoutError(f"unknown element <{child.tag}> in <Skills>")
                text = _check_leaf(child)
                if text:
                    resume.skills[category].append(text)
        elif section.tag == "AdditionalInformation":
            for child in section:
                if child.tag != "Item":
                    raise LayoutError(f"unknown element <{child.tag}> in "
                                      "<AdditionalInformation>")
                text = _check_leaf(child)
                if text:
                    resume.additional.append(text)
        elif section.tag == "Annexes":
            for child in section:
                if child.tag != "Item":
                    raise LayoutError(f"unknown element <{child.tag}> in <Annexes>")
                text = _check_leaf(child)
                if text:
                    resume.annexes.append(text)
        else:
            raise LayoutError(f"unknown section <{section.tag}>")

    return resume
