"""Resume-domain ontology: class taxonomy, properties with facets, gazetteers.

The schema lives in a line-oriented UTF-8 file so it stays versionable and
diffable. Grammar (see also docs/formats.md):

    version <string>                                   # at most once
    class <Name> [: <Parent>]
    property <Class>.<name> : <type> <single|multiple> [= <default>]
    instance <Class> "<label>" ["variant1","variant2",...]
    # comment

Any other non-blank line is rejected with its line number.
"""

import re
from dataclasses import dataclass, field, replace

from resumekit.errors import FileFormatError, UnknownClassError, ValidationError

VALUE_TYPES = ("string", "integer", "date", "boolean")
CARDINALITIES = ("single", "multiple")
INSTANCE_SOURCES = ("manual", "imported")

# Annotation target classes every schema must declare.
REQUIRED_CLASSES = (
    "Name", "Gender", "Nationality", "Date", "Address", "Phone",
    "Fax", "Email", "Institute", "Language", "Competency", "Training",
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_CLASS_RE = re.compile(r"^class\s+(\w+)(?:\s*:\s*(\w+))?\s*$")
_PROPERTY_RE = re.compile(
    r"^property\s+(\w+)\.(\w+)\s*:\s*(\w+)\s+(\w+)(?:\s*=\s*(.+?))?\s*$")
_INSTANCE_RE = re.compile(r'^instance\s+(\w+)\s+"([^"]*)"\s*(\[.*\])?\s*$')
_VERSION_RE = re.compile(r"^version\s+(\S+)\s*$")
_QUOTED_RE = re.compile(r'"([^"]*)"')


@dataclass(frozen=True)
class PropertyDef:
    """A class attribute with its facets (value type, cardinality, default)."""

    name: str
    value_type: str
    cardinality: str = "single"
    default: str | None = None


@dataclass(frozen=True)
class OntologyClass:
    """A concept in the taxonomy; inherits all properties of its ancestors."""

    name: str
    parent: str | None = None
    properties: tuple[PropertyDef, ...] = ()


@dataclass(frozen=True)
class InstanceEntry:
    """A gazetteer entry: a known surface form (plus variants) of a class."""

    class_name: str
    label: str
    variants: tuple[str, ...] = ()
    source: str = "manual"

    def forms(self):
        """Label and variants in declaration order."""
        return (self.label,) + self.variants


@dataclass(frozen=True)
class Violation:
    """One violated invariant, naming the offending element."""

    element: str
    message: str

    def __str__(self):
        return f"{self.element}: {self.message}"


@dataclass(frozen=True)
class OntologySchema:
    """The loaded ontology: classes keyed by name plus the instance list.

    Immutable after load; safe to share read-only across workers.
    """

    classes: dict[str, OntologyClass] = field(default_factory=dict)
    instances: tuple[InstanceEntry, ...] = ()
    version: str = "1"

    def children_of(self, class_name):
        return [c.name for c in self.classes.values() if c.parent == class_name]

    def with_instances(self, extra):
        """New schema with ``extra`` instance entries appended."""
        return replace(self, instances=self.instances + tuple(extra))


def _parse_default(raw):
    raw = raw.strip()
    if len(raw) >= 2 and raw[0] == '"' and raw[-1] == '"':
        return raw[1:-1]
    return raw


def _parse_variants(raw, path, line_no):
    inner = raw.strip()[1:-1].strip()
    if not inner:
        return ()
    variants = _QUOTED_RE.findall(inner)
    # Everything between the brackets must be quoted strings and commas.
    leftover = _QUOTED_RE.sub("", inner).replace(",", "").strip()
    if leftover or not variants:
        raise FileFormatError(path, line_no, f"malformed variant list {raw!r}")
    return tuple(variants)


def _parse(text, path):
    """Parse ontology source; returns (schema, structural violations).

    Raises FileFormatError on the first malformed line. Duplicate class
    declarations and orphan properties come back as violations so the
    caller can report them together with semantic ones.
    """
    classes: dict[str, OntologyClass] = {}
    structural: list[Violation] = []
    instances: list[InstanceEntry] = []
    pending_properties: list[tuple[int, str, PropertyDef]] = []
    version = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _CLASS_RE.match(line)
        if m:
            name, parent = m.group(1), m.group(2)
            if name in classes:
                structural.append(Violation(name, "class declared more than once"))
            else:
                classes[name] = OntologyClass(name=name, parent=parent)
            continue
        m = _PROPERTY_RE.match(line)
        if m:
            class_name, prop_name, value_type, cardinality, default = m.groups()
            if value_type not in VALUE_TYPES:
                raise FileFormatError(
                    path, line_no,
                    f"unknown value type {value_type!r} (expected one of {', '.join(VALUE_TYPES)})")
            if cardinality not in CARDINALITIES:
                raise FileFormatError(
                    path, line_no,
                    f"unknown cardinality {cardinality!r} (expected single or multiple)")
            prop = PropertyDef(
                name=prop_name, value_type=value_type, cardinality=cardinality,
                default=_parse_default(default) if default is not None else None)
            pending_properties.append((line_no, class_name, prop))
            continue
        m = _INSTANCE_RE.match(line)
        if m:
            class_name, label, variants_raw = m.groups()
            variants = _parse_variants(variants_raw, path, line_no) if variants_raw else ()
            instances.append(InstanceEntry(class_name=class_name, label=label,
                                           variants=variants))
            continue
        m = _VERSION_RE.match(line)
        if m:
            if version is not None:
                raise FileFormatError(path, line_no, "version declared more than once")
            version = m.group(1)
            continue
        raise FileFormatError(path, line_no, f"unrecognized directive: {line!r}")

    for line_no, class_name, prop in pending_properties:
        owner = classes.get(class_name)
        if owner is None:
            structural.append(Violation(
                f"{class_name}.{prop.name}",
                f"property declared for unknown class {class_name!r} (line {line_no})"))
            continue
        classes[class_name] = replace(owner, properties=owner.properties + (prop,))

    schema = OntologySchema(classes=classes, instances=tuple(instances),
                            version=version if version is not None else "1")
    return schema, structural


def parse_ontology(text, path="<string>"):
    """Parse ontology source into a schema without semantic validation."""
    schema, structural = _parse(text, path)
    if structural:
        raise ValidationError(structural)
    return schema


def load_ontology(path):
    """Load and validate an ontology file.

    Raises FileFormatError (with line number) for syntax problems and
    ValidationError listing every violated invariant.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    schema, structural = _parse(text, path)
    violations = structural + validate_ontology(schema)
    if violations:
        raise ValidationError(violations)
    return schema


def load_instance_file(path):
    """Load bulk gazetteer entries (source ``imported``).

    One entry per line: ``Class<TAB>label[<TAB>variant1|variant2|...]``;
    ``#`` comments and blank lines are ignored.
    """
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise FileFormatError(path, line_no,
                                      "expected Class<TAB>label[<TAB>variants]")
            class_name, label = parts[0].strip(), parts[1]
            variants = tuple(v for v in parts[2].split("|")) if len(parts) == 3 else ()
            entries.append(InstanceEntry(class_name=class_name, label=label,
                                         variants=variants, source="imported"))
    return entries


def _find_cycles(schema):
    """Names of classes sitting on a parent cycle."""
    on_cycle = set()
    state = {}  # name -> 0 visiting, 1 done
    for start in schema.classes:
        if start in state:
            continue
        path = []
        node = start
        while node is not None and node in schema.classes and node not in state:
            state[node] = 0
            path.append(node)
            node = schema.classes[node].parent
        if node is not None and state.get(node) == 0:
            # Found a back-edge into the current path: mark the loop.
            idx = path.index(node)
            on_cycle.update(path[idx:])
        for name in path:
            state[name] = 1
    return on_cycle


def ancestors(schema, class_name):
    """Ancestor chain (immediate parent first); stops at a cycle."""
    chain = []
    seen = {class_name}
    node = schema.classes.get(class_name)
    while node is not None and node.parent is not None:
        if node.parent in seen or node.parent not in schema.classes:
            break
        chain.append(node.parent)
        seen.add(node.parent)
        node = schema.classes[node.parent]
    return chain


def descendants(schema, class_name):
    """All transitive subclasses of ``class_name``."""
    out = []
    stack = [class_name]
    seen = {class_name}
    while stack:
        current = stack.pop()
        for child in schema.children_of(current):
            if child not in seen:
                seen.add(child)
                out.append(child)
                stack.append(child)
    return out


def effective_properties(schema, class_name):
    """Own plus inherited properties, root-most ancestors first.

    On the duplicate names a validator would flag, the first definition
    along the chain wins.
    """
    if class_name not in schema.classes:
        raise UnknownClassError(class_name)
    chain = [class_name] + ancestors(schema, class_name)
    out = []
    seen = set()
    for name in reversed(chain):
        for prop in schema.classes[name].properties:
            if prop.name not in seen:
                seen.add(prop.name)
                out.append(prop)
    return out


def instances_of(schema, class_name):
    """Instances of ``class_name`` or any descendant, in declaration order."""
    if class_name not in schema.classes:
        raise UnknownClassError(class_name)
    targets = {class_name, *descendants(schema, class_name)}
    return [entry for entry in schema.instances if entry.class_name in targets]


def _default_parses(value, value_type):
    if value_type == "string":
        return True
    if value_type == "integer":
        try:
            int(value, 10)
            return True
        except ValueError:
            return False
    if value_type == "boolean":
        return value.lower() in ("true", "false")
    if value_type == "date":
        return bool(re.fullmatch(r"\d{2}/\d{2}/\d{4}", value)
                    or re.fullmatch(r"\d{4}-\d{2}-\d{2}", value))
    return False


def validate_ontology(schema):
    """Check every schema invariant; returns the list of violations.

    An empty list means the schema is valid. Never raises; violations are
    the return value.
    """
    violations = []
    classes = schema.classes

    for required in REQUIRED_CLASSES:
        if required not in classes:
            violations.append(Violation(required, "required target class missing"))

    on_cycle = _find_cycles(schema)
    for name in sorted(on_cycle):
        violations.append(Violation(name, "class is part of a parent cycle"))

    for name, cls in classes.items():
        if not _IDENT.fullmatch(name):
            violations.append(Violation(name, "class name is not a valid identifier"))
        if cls.name != name:
            violations.append(Violation(name, f"keyed as {name!r} but named {cls.name!r}"))
        if cls.parent is not None and cls.parent not in classes:
            violations.append(Violation(name, f"parent {cls.parent!r} is not declared"))
        own = set()
        for prop in cls.properties:
            if not _IDENT.fullmatch(prop.name):
                violations.append(Violation(
                    f"{name}.{prop.name}", "property name is not a valid identifier"))
            if prop.value_type not in VALUE_TYPES:
                violations.append(Violation(
                    f"{name}.{prop.name}", f"invalid value type {prop.value_type!r}"))
            if prop.cardinality not in CARDINALITIES:
                violations.append(Violation(
                    f"{name}.{prop.name}", f"invalid cardinality {prop.cardinality!r}"))
            if prop.default is not None and not _default_parses(prop.default, prop.value_type):
                violations.append(Violation(
                    f"{name}.{prop.name}",
                    f"default {prop.default!r} does not parse as {prop.value_type}"))
            if prop.name in own:
                violations.append(Violation(
                    f"{name}.{prop.name}", "property declared more than once"))
            own.add(prop.name)

    # Inherited duplicates: a class may not redeclare an ancestor's property.
    for name in classes:
        if name in on_cycle:
            continue
        seen = {}
        chain = [name] + ancestors(schema, name)
        for holder in reversed(chain):
            for prop in classes[holder].properties:
                if prop.name in seen and seen[prop.name] != holder:
                    if holder == name:
                        violations.append(Violation(
                            f"{name}.{prop.name}",
                            f"redeclares property inherited from {seen[prop.name]}"))
                else:
                    seen.setdefault(prop.name, holder)

    for entry in schema.instances:
        ident = f"{entry.class_name}:{entry.label!r}"
        if entry.class_name not in classes:
            violations.append(Violation(ident, "instance references undeclared class"))
        if not entry.label.strip():
            violations.append(Violation(ident, "instance label is empty"))
        for variant in entry.variants:
            if not variant.strip():
                violations.append(Violation(ident, "instance variant is empty"))
        if entry.source not in INSTANCE_SOURCES:
            violations.append(Violation(ident, f"invalid source {entry.source!r}"))

    return violations
