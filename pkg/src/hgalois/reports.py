"""Verification reports: named check entries with exact failure witnesses."""

from .presentations import Element, word_to_tokens


class CheckEntry:
    __slots__ = ("check", "anchor", "subject", "passed", "witness")

    def __init__(self, check, anchor, subject, passed, witness=None):
        self.check = check
        self.anchor = anchor
        self.subject = subject
        self.passed = bool(passed)
        self.witness = witness

    def __repr__(self):
        status = "pass" if self.passed else "FAIL"
        return f"[{status}] {self.check} ({self.subject})"


class VerificationReport:
    """An ordered list of check entries; passes iff every entry passes."""

    def __init__(self, entries=()):
        self.entries = list(entries)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def add(self, check, anchor, subject, passed, witness=None):
        self.entries.append(CheckEntry(check, anchor, subject, passed, witness))

    def extend(self, other: "VerificationReport"):
        self.entries.extend(other.entries)
        return self

    def __repr__(self):
        n_fail = len(self.failures())
        status = "pass" if not n_fail else f"{n_fail} failing"
        return f"VerificationReport({len(self.entries)} checks, {status})"


def serialize_witness(witness, render_coeff):
    """Canonical JSON form of a failure witness (element, tensor, or text)."""
    if witness is None:
        return None
    if isinstance(witness, str):
        return {"kind": "note", "text": witness}
    if isinstance(witness, Element):
        return {
            "kind": "element",
            "terms": [
                {"coeff": render_coeff(c), "word": word_to_tokens(w)}
                for w, c in witness.sorted_terms()
            ],
        }
    # tensor
    return {
        "kind": "tensor",
        "signature": ["op" if s else "plain" for s in witness.signature],
        "terms": [
            {"coeff": render_coeff(c), "factors": [word_to_tokens(w) for w in words]}
            for words, c in witness.sorted_terms()
        ],
    }


def witness_text(witness) -> str:
    if witness is None:
        return ""
    if isinstance(witness, str):
        return witness
    return repr(witness)


def element_terms_json(element, render_coeff) -> list:
    return [
        {"coeff": render_coeff(c), "word": word_to_tokens(w)}
        for w, c in element.sorted_terms()
    ]


def tensor_terms_json(tensor, render_coeff) -> list:
    return [
        {"coeff": render_coeff(c), "factors": [word_to_tokens(w) for w in words]}
        for words, c in tensor.sorted_terms()
    ]


def entry_to_json(entry: CheckEntry, render_coeff) -> dict:
    doc = {
        "check": entry.check,
        "anchor": entry.anchor,
        "subject": entry.subject,
        "status": "pass" if entry.passed else "fail",
    }
    if not entry.passed:
        doc["witness"] = serialize_witness(entry.witness, render_coeff)
    return doc
