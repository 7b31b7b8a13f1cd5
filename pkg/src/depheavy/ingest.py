"""Package-metadata ingestion.

Two input formats are normalized into a :class:`PackageDatabase`:

* DCF documents (stanzas separated by blank lines, ``Name: value`` fields,
  continuation lines indented) as used by CRAN-style package indexes.
* A generic edge-list CSV with header ``child,parent,relation`` where
  relation is ``strong`` or ``weak`` (optional fourth column ``repository``).
"""

from __future__ import annotations

import csv
import io
import re
import warnings
from dataclasses import dataclass, field

from .errors import DepFieldError, EdgeListFormatError

STRONG_FIELDS = ("Depends", "Imports", "LinkingTo")
WEAK_FIELDS = ("Suggests", "Enhances")
FIELD_KINDS = STRONG_FIELDS + WEAK_FIELDS

#: R itself plus the base/recommended set that never appears in repository
#: indexes.  A config default, not hard-coded behavior: callers may pass any
#: exclusion set to build_database().
DEFAULT_EXCLUSIONS = frozenset({
    "R", "base", "stats", "utils", "methods", "graphics", "grDevices",
    "tools", "datasets", "parallel", "splines", "grid", "compiler", "tcltk",
    "stats4", "Matrix", "MASS", "lattice", "survival", "nlme", "mgcv",
    "boot", "class", "cluster", "codetools", "foreign", "KernSmooth",
    "nnet", "rpart", "spatial",
})

# Letters, digits, dots; starts with a letter; length >= 2; no trailing dot.
_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9.]*$")


def valid_package_name(name: str) -> bool:
    return len(name) >= 2 and not name.endswith(".") and bool(_NAME_RE.match(name))


@dataclass(frozen=True)
class DepDeclaration:
    name: str
    field_kind: str
    version_constraint: str | None = None

    def __post_init__(self):
        if not self.name:
            raise DepFieldError("empty dependency name")
        if self.field_kind not in FIELD_KINDS:
            raise DepFieldError(f"unknown dependency field: {self.field_kind!r}")

    @property
    def strong(self) -> bool:
        return self.field_kind in STRONG_FIELDS


@dataclass
class RawPackageRecord:
    name: str
    declarations: tuple[DepDeclaration, ...] = ()
    repository: str = "CRAN"


@dataclass
class PackageDatabase:
    packages: dict[str, RawPackageRecord] = field(default_factory=dict)
    excluded_names: frozenset[str] = DEFAULT_EXCLUSIONS
    snapshot_label: str = ""

    def is_external(self, name: str) -> bool:
        """External declarations never become graph edges."""
        return name in self.excluded_names or name not in self.packages

    def __len__(self) -> int:
        return len(self.packages)


@dataclass(frozen=True)
class ParseIssue:
    line: int
    message: str


def parse_dep_field(field_text: str, field_kind: str) -> list[DepDeclaration]:
    """Split a comma-separated dependency list into declarations.

    Parenthesized version constraints are captured verbatim; whitespace
    (including embedded newlines from unfolded continuation lines) is
    trimmed.  Raises DepFieldError on an unbalanced parenthesis.
    """
    if field_kind not in FIELD_KINDS:
        raise DepFieldError(f"unknown dependency field: {field_kind!r}")
    out: list[DepDeclaration] = []
    for entry in _split_top_level(field_text):
        entry = entry.strip()
        if not entry:
            continue
        constraint = None
        open_idx = entry.find("(")
        if open_idx >= 0:
            if not entry.endswith(")") or entry.count("(") != entry.count(")"):
                raise DepFieldError(f"unbalanced parenthesis in entry {entry!r}")
            constraint = entry[open_idx + 1:-1].strip()
            entry = entry[:open_idx].strip()
        elif ")" in entry:
            raise DepFieldError(f"unbalanced parenthesis in entry {entry!r}")
        if not entry:
            raise DepFieldError(f"missing name before constraint in {field_text!r}")
        name = " ".join(entry.split())
        out.append(DepDeclaration(name, field_kind, constraint or None))
    return out


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_dcf(text: str, repository: str = "CRAN") -> tuple[list[RawPackageRecord], list[ParseIssue]]:
    """Parse a DCF document into package records.

    One record per stanza containing a ``Package:`` field; the five
    dependency fields are captured when present and all other fields are
    ignored.  Malformed stanzas (continuation line before any field,
    missing ``Package:``) produce a ParseIssue with a line number and
    parsing continues with the next stanza.
    """
    records: list[RawPackageRecord] = []
    issues: list[ParseIssue] = []

    stanza: list[tuple[str, str]] = []        # (field name, unfolded value)
    stanza_start = 0
    broken = False

    def flush(end_line: int):
        nonlocal stanza, broken
        if stanza and not broken:
            rec, issue = _stanza_to_record(stanza, stanza_start, repository)
            if rec is not None:
                records.append(rec)
            if issue is not None:
                issues.append(issue)
        stanza = []
        broken = False

    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            flush(lineno)
            continue
        if line[0] in " \t":
            if not stanza:
                issues.append(ParseIssue(lineno, "continuation line before any field"))
                broken = True
                stanza = [("", "")]           # swallow the rest of this stanza
                stanza_start = lineno
                continue
            if not broken:
                name, value = stanza[-1]
                stanza[-1] = (name, f"{value} {line.strip()}" if value else line.strip())
            continue
        if broken:
            continue
        if not stanza:
            stanza_start = lineno
        key, sep, value = line.partition(":")
        if not sep:
            issues.append(ParseIssue(lineno, f"malformed field line: {line.strip()!r}"))
            broken = True
            continue
        stanza.append((key.strip(), value.strip()))
    flush(len(text.splitlines()))
    return records, issues


def _stanza_to_record(
    stanza: list[tuple[str, str]], start_line: int, repository: str
) -> tuple[RawPackageRecord | None, ParseIssue | None]:
    fields = {}
    for key, value in stanza:
        if key not in fields:                  # first occurrence wins
            fields[key] = value
    name = fields.get("Package")
    if not name:
        return None, ParseIssue(start_line, "stanza without a Package: field")
    decls: list[DepDeclaration] = []
    seen: set[tuple[str, str]] = set()
    issue = None
    for kind in FIELD_KINDS:
        if kind not in fields:
            continue
        try:
            parsed = parse_dep_field(fields[kind], kind)
        except DepFieldError as exc:
            issue = ParseIssue(start_line, f"{name}: {kind}: {exc}")
            continue
        for decl in parsed:
            key = (decl.name, decl.field_kind)
            if key not in seen:                # collapse duplicates
                seen.add(key)
                decls.append(decl)
    return RawPackageRecord(name, tuple(decls), repository), issue


def build_database(
    records: list[RawPackageRecord],
    exclusions: frozenset[str] | set[str] = DEFAULT_EXCLUSIONS,
    snapshot_label: str = "",
) -> PackageDatabase:
    """Normalize records into a database.

    Duplicate package names resolve last-wins with a warning; names failing
    the package-name grammar are accepted with a warning (real snapshots
    contain historical oddities).
    """
    packages: dict[str, RawPackageRecord] = {}
    for rec in records:
        if rec.name in packages:
            warnings.warn(f"duplicate package {rec.name!r}: keeping the later record")
        if not valid_package_name(rec.name):
            warnings.warn(f"package name {rec.name!r} does not match the name grammar")
        packages[rec.name] = rec
    return PackageDatabase(packages, frozenset(exclusions), snapshot_label)


_RELATION_TO_FIELD = {"strong": "Imports", "weak": "Suggests"}


def load_edge_list(path: str, snapshot_label: str = "",
                   exclusions: frozenset[str] = frozenset()) -> PackageDatabase:
    """Load the edge-list CSV format into a database.

    Every endpoint becomes a package (dangling references are impossible);
    ``strong`` maps to Imports and ``weak`` to Suggests.
    """
    with open(path, "r", encoding="utf-8", errors="replace", newline="") as fh:
        return _read_edge_list(fh, snapshot_label, exclusions)


def _read_edge_list(fh, snapshot_label: str, exclusions: frozenset[str]) -> PackageDatabase:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or [c.strip() for c in header[:3]] != ["child", "parent", "relation"]:
        raise EdgeListFormatError("expected header child,parent,relation", 1)
    decls: dict[str, list[DepDeclaration]] = {}
    repos: dict[str, str] = {}
    for lineno, row in enumerate(reader, 2):
        if not row or not "".join(row).strip():
            continue
        if len(row) < 3:
            raise EdgeListFormatError(f"expected at least 3 columns, got {len(row)}", lineno)
        child, parent, relation = (c.strip() for c in row[:3])
        if relation not in _RELATION_TO_FIELD:
            raise EdgeListFormatError(f"unknown relation {relation!r}", lineno)
        if not child or not parent:
            raise EdgeListFormatError("empty package name", lineno)
        decls.setdefault(child, []).append(
            DepDeclaration(parent, _RELATION_TO_FIELD[relation]))
        decls.setdefault(parent, [])
        if len(row) >= 4 and row[3].strip():
            repos[child] = row[3].strip()
    records = []
    for name in decls:
        seen: set[tuple[str, str]] = set()
        unique = []
        for d in decls[name]:
            key = (d.name, d.field_kind)
            if key not in seen:
                seen.add(key)
                unique.append(d)
        records.append(RawPackageRecord(name, tuple(unique), repos.get(name, "Other")))
    return build_database(records, exclusions, snapshot_label)


DB_SCHEMA = "depheavy/db@1"


def save_database(db: PackageDatabase, path: str) -> None:
    """Write the normalized database as a JSON document."""
    import json

    doc = {
        "schema": DB_SCHEMA,
        "snapshot_label": db.snapshot_label,
        "excluded_names": sorted(db.excluded_names),
        "packages": [
            {
                "name": rec.name,
                "repository": rec.repository,
                "declarations": [
                    {"name": d.name, "field": d.field_kind,
                     **({"constraint": d.version_constraint} if d.version_constraint else {})}
                    for d in rec.declarations
                ],
            }
            for rec in (db.packages[n] for n in sorted(db.packages))
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_database(path: str) -> PackageDatabase:
    """Read a database written by save_database()."""
    import json

    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise EdgeListFormatError(
                f"not a {DB_SCHEMA} document ({exc.msg})", exc.lineno) from None
    if not isinstance(doc, dict) or doc.get("schema") != DB_SCHEMA:
        raise EdgeListFormatError(f"not a {DB_SCHEMA} document", 1)
    records = [
        RawPackageRecord(
            p["name"],
            tuple(DepDeclaration(d["name"], d["field"], d.get("constraint"))
                  for d in p.get("declarations", ())),
            p.get("repository", "Other"),
        )
        for p in doc.get("packages", ())
    ]
    return build_database(records, frozenset(doc.get("excluded_names", ())),
                          doc.get("snapshot_label", ""))


def write_edge_list(db: PackageDatabase, path: str) -> None:
    """Serialize the database's graph edges to the edge-list CSV format.

    Only non-external declarations are written (external declarations never
    become edges); within a (child, parent) pair a strong declaration wins.
    Re-loading the output yields an identical strong/weak edge multiset.
    """
    rows: dict[tuple[str, str], str] = {}
    for name, rec in db.packages.items():
        for decl in rec.declarations:
            if db.is_external(decl.name) or decl.name == name:
                continue
            key = (name, decl.name)
            relation = "strong" if decl.strong else "weak"
            if rows.get(key) != "strong":
                rows[key] = relation
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["child", "parent", "relation", "repository"])
    for (child, parent) in sorted(rows):
        writer.writerow([child, parent, rows[(child, parent)],
                         db.packages[child].repository])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())
