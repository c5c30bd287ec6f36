"""Recurrence configuration files.

Grammar (INI-style, UTF-8; ``#`` or ``;`` starts a comment)::

    r = 3            # radix, integer >= 2, before any section

    [c1]             # sections c1..c4, each optional (absent means 0)
    0 = 1            # <exponent> = <coefficient>, both decimal integers
    [c2]
    1 = 1
    -1 = 1

Every exponent e in a section must satisfy -r < e < r.
"""
from __future__ import annotations

import configparser
import re

from .arith import LaurentPoly
from .errors import ConfigError
from .recurrence import Recurrence

PRESETS = {"classic": Recurrence.classic}

_INT = re.compile(r"^[+-]?\d+$")
_HEADER = "__recurrence__"


def preset(name: str) -> Recurrence:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None


def _int(text: str, what: str, line: int | None) -> int:
    text = text.strip()
    if not _INT.match(text):
        where = f" (line {line})" if line else ""
        raise ConfigError(f"{what} must be a decimal integer, got {text!r}{where}")
    return int(text)


def _line_of(lines: list[str], section: str | None, key: str) -> int | None:
    current = None
    for no, raw in enumerate(lines, 1):
        s = raw.split("#")[0].split(";")[0].strip()
        if s.startswith("[") and s.endswith("]"):
            current = s[1:-1].strip().lower()
        elif current == section and "=" in s and s.split("=")[0].strip().lower() == key:
            return no
    return None


def parse_config(text: str) -> Recurrence:
    """Parse and validate a recurrence document."""
    lines = text.splitlines()
    cp = configparser.ConfigParser(
        interpolation=None,
        delimiters=("=",),
        comment_prefixes=("#", ";"),
        inline_comment_prefixes=("#", ";"),
        default_section="__defaults__",
    )
    try:
        cp.read_string(f"[{_HEADER}]\n" + text)
    except configparser.ParsingError as exc:
        lineno, bad = exc.errors[0]
        raise ConfigError(f"parse error at line {lineno - 1}: {bad.strip()!r}") from None
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(
            f"parse error at line {exc.lineno - 1}: duplicate entry {exc.option!r} in [{exc.section}]"
        ) from None
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"parse error at line {exc.lineno - 1}: duplicate section [{exc.section}]") from None
    except configparser.Error as exc:
        raise ConfigError(f"parse error: {exc}") from None

    top = dict(cp[_HEADER])
    extra = set(top) - {"r"}
    if extra:
        raise ConfigError(f"unknown top-level key(s): {', '.join(sorted(extra))}")
    if "r" not in top:
        raise ConfigError("missing radix 'r'")
    r = _int(top["r"], "radix r", _line_of(lines, None, "r"))
    if r < 2:
        raise ConfigError(f"radix r must be >= 2, got {r}")

    coeffs = {}
    for section in cp.sections():
        if section == _HEADER:
            continue
        name = section.strip().lower()
        if name not in ("c1", "c2", "c3", "c4"):
            raise ConfigError(f"unknown section [{section}]; expected c1..c4")
        terms = {}
        for key, value in cp[section].items():
            line = _line_of(lines, name, key)
            e = _int(key, f"exponent in [{name}]", line)
            c = _int(value, f"coefficient of z^{e} in [{name}]", line)
            if not -r < e < r:
                raise ConfigError(
                    f"validation error: ({name}, exponent {e}) violates -r < exponent < r with r={r}"
                )
            terms[e] = terms.get(e, 0) + c
        coeffs[name] = LaurentPoly(terms)
    return Recurrence(r, **coeffs)


def load_config(source: str) -> Recurrence:
    """A preset name or a path to a configuration file."""
    if source in PRESETS:
        return preset(source)
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {source!r}: {exc.strerror}") from None
    return parse_config(text)


def format_config(rec: Recurrence) -> str:
    out = [f"r = {rec.r}"]
    for name, c in zip(("c1", "c2", "c3", "c4"), rec.coeffs):
        if c:
            out.append(f"\n[{name}]")
            out.extend(f"{e} = {v}" for e, v in sorted(c.items()))
    return "\n".join(out) + "\n"
