import itertools
from pathlib import Path

from ..log import logger


def next_path(path):
    """First unused path among ``path``, ``<stem>_00<suffixes>``, ``<stem>_01<suffixes>``...

    Examples
    --------
    >>> next_path("envelope_IV-5.json")  # path does not exist
    PosixPath('envelope_IV-5.json')

    >>> Path("envelope_IV-5.json").touch()
    >>> next_path("envelope_IV-5.json")  # path exists
    PosixPath('envelope_IV-5_00.json')

    """
    path = Path(path)
    if not path.exists():
        return path

    suffixes = "".join(path.suffixes)
    stem = path.name[: len(path.name) - len(suffixes)]
    for index in itertools.count():
        candidate = path.with_name(f"{stem}_{index:02d}{suffixes}")
        if not candidate.exists():
            logger.debug(f"{path} exists, writing {candidate}")
            return candidate
