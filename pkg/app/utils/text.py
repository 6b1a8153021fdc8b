import re
from typing import Any, Iterable


def normalize_text(text: str) -> str:
    """Normalize line endings and strip trailing whitespace from every line"""
    if not text:
        return ""

    text = text.replace("\r\n", "\n").replace("\r", "\n")
    lines = [line.rstrip() for line in text.split("\n")]

    return "\n".join(lines).strip("\n")


def strip_comment(line: str) -> str:
    """Drop a trailing `#` comment from a spec line"""
    index = line.find("#")
    return line if index < 0 else line[:index]


def safe_truncate(text: str, max_length: int = 60, suffix: str = "...") -> str:
    """Safely truncate text to max_length, preserving item boundaries"""
    if len(text) <= max_length:
        return text

    truncated = text[:max_length - len(suffix)]
    last_break = max(truncated.rfind(","), truncated.rfind(" "))

    if last_break > 0:
        truncated = truncated[:last_break]

    return truncated + suffix


def format_point(point: Any) -> str:
    """Format a point id; product points are pairs"""
    if isinstance(point, tuple):
        return "(" + ",".join(format_point(p) for p in point) + ")"
    return str(point)


def format_class(points: Iterable[Any]) -> str:
    """Format a set of points as {a,b,c} in sorted order"""
    return "{" + ",".join(format_point(p) for p in sorted(points)) + "}"


def format_label(label: Any) -> str:
    """Format a tree node label for JSON and DOT output"""
    if label is None:
        return ""
    if isinstance(label, (set, frozenset)):
        return format_class(label)
    if isinstance(label, tuple):
        return "(" + ", ".join(format_label(part) for part in label) + ")"
    return str(label)


def dot_escape(text: str) -> str:
    """Escape a string for use inside a quoted DOT attribute"""
    return text.replace("\\", "\\\\").replace('"', '\\"')


def sanitize_name(name: str) -> str:
    """Make a string usable as a spec identifier"""
    name = re.sub(r"[^A-Za-z0-9_]", "_", name)
    if not name or name[0].isdigit():
        name = "g_" + name
    return name
