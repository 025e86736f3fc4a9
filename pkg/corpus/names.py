import re

from unidecode import unidecode

# Everything except letters, digits, whitespace and the surname/forename comma.
_PUNCTUATION_RE = re.compile(r"[^a-z0-9,\s]")
_WHITESPACE_RE = re.compile(r"\s+")


def _collapse(text: str) -> str:
    return _WHITESPACE_RE.sub(" ", text).strip()


def normalize_name(raw: str) -> tuple[str, str]:
    """Normalize a byline name into (surname, forename).

    Lowercases, transliterates to ASCII and turns punctuation into spaces. A comma marks
    "surname, forename" order; otherwise the last token is the surname. A trailing lone
    initial after a longer first token ("Newman M.") is read as surname-first.

        "Newman, M.E.J." -> ("newman", "m e j")
        "Mark Newman"    -> ("newman", "mark")
    """
    if raw is None or not raw.strip():
        raise ValueError("Cannot normalize an empty name.")

    text = _PUNCTUATION_RE.sub(" ", unidecode(raw).lower())
    if "," in text:
        surname, _, forename = text.partition(",")
        forename = forename.replace(",", " ")
    else:
        tokens = text.split()
        if not tokens:
            raise ValueError(f"Name {raw!r} has no letters or digits.")
        if len(tokens) >= 2 and len(tokens[-1]) == 1 and len(tokens[0]) > 1:
            surname, forename = tokens[0], " ".join(tokens[1:])
        else:
            surname, forename = tokens[-1], " ".join(tokens[:-1])

    surname, forename = _collapse(surname), _collapse(forename)
    if not surname:
        raise ValueError(f"Name {raw!r} has no surname.")
    return surname, forename


def block_key(surname: str, forename: str) -> str:
    """First forename initial + " " + full surname."""
    return f"{forename[:1]} {surname}"


def full_forename_block_key(surname: str, forename: str) -> str:
    return f"{forename} {surname}"


def display_name(surname: str, forename: str) -> str:
    """Render a normalized name back as "surname, forename"; normalizes to itself."""
    return f"{surname}, {forename}" if forename else f"{surname},"


def initials(forename: str) -> str:
    return "".join(token[0] for token in forename.split())


def first_initial_key(surname: str, forename: str) -> tuple[str, str]:
    return surname, forename[:1]


def letters_only(text: str) -> str:
    return re.sub(r"[^a-z]", "", text.lower())
