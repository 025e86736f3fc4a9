from corpus.emails import instance_id_for
from corpus.models import PublicationRecord
from corpus.names import normalize_name


def build_coauthor_lists(record: PublicationRecord) -> dict[str, list[tuple[str, str]]]:
    """Each byline instance's coauthors: every other byline name, normalized, in byline order."""
    names = [normalize_name(raw) for raw in record.authors]
    return {
        instance_id_for(record.paper_id, position): names[:position] + names[position + 1:]
        for position in range(len(names))
    }
