import json
import os
import sys
from typing import Any, Dict, Generator, Iterable, List, Mapping, Tuple

from intent_pipeline.exceptions import ConfigurationError, MalformedRecord

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib


def _iter_lines(path: str) -> Generator[Tuple[int, str], None, None]:
    """Yield the 1-based line number and UTF-8 decoded text of every line.

    Raises:
        MalformedRecord: If a line is not valid UTF-8.

    """
    with open(path, "rb") as infile:
        for line_number, raw in enumerate(infile, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise MalformedRecord(
                    line_number, f"invalid UTF-8 at byte {e.start}", path
                ) from e
            yield line_number, line


def iter_jsonl(path: str) -> Generator[Tuple[int, Dict[str, Any]], None, None]:
    """Iterate over the JSON objects of a JSONL file.

    Blank lines are skipped. Every other line must hold one JSON object.

    Args:
        path (str): The path of the JSONL file.

    Yields:
        Tuple[int, Dict[str, Any]]: The 1-based line number and the parsed object.

    Raises:
        MalformedRecord: If a line is not valid UTF-8 or not a JSON object.

    """
    for line_number, line in _iter_lines(path):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise MalformedRecord(line_number, f"invalid JSON ({e.msg})", path) from e
        if not isinstance(record, dict):
            raise MalformedRecord(line_number, "expected a JSON object", path)
        yield line_number, record


def iter_tsv(
    path: str, min_fields: int
) -> Generator[Tuple[int, List[str]], None, None]:
    """Iterate over the tab-separated rows of a file.

    Args:
        path (str): The path of the TSV file.
        min_fields (int): Minimum number of fields a row must have.

    Yields:
        Tuple[int, List[str]]: The 1-based line number and the stripped fields.

    Raises:
        MalformedRecord: If a row is not valid UTF-8 or a non-blank row has too
            few fields.

    """
    for line_number, line in _iter_lines(path):
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = [part.strip() for part in line.split("\t")]
        if len(fields) < min_fields:
            raise MalformedRecord(
                line_number, f"expected {min_fields} tab-separated fields", path
            )
        yield line_number, fields


def write_jsonl(path: str, records: Iterable[Mapping[str, Any]]) -> int:
    """Write records as JSONL with sorted keys so output is byte-stable.

    Returns:
        int: The number of records written.

    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8") as outfile:
        for record in records:
            outfile.write(json.dumps(record, sort_keys=True, ensure_ascii=False))
            outfile.write("\n")
            count += 1
    return count


def flatten_settings(
    settings: Mapping[str, Any], prefix: str = ""
) -> Dict[str, Any]:
    """Flatten nested mappings into dotted keys.

    ``{"drift": {"tau": 0.8}}`` becomes ``{"drift.tau": 0.8}``; keys that are
    already dotted pass through unchanged.

    """
    flat: Dict[str, Any] = {}
    for key, value in settings.items():
        full_key = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten_settings(value, f"{full_key}."))
        else:
            flat[full_key] = value
    return flat


def load_config_file(path: str) -> Dict[str, Any]:
    """Load a TOML or JSON config file into flat dotted keys.

    Args:
        path (str): A ``.toml`` or ``.json`` file.

    Returns:
        Dict[str, Any]: The flattened settings.

    Raises:
        ConfigurationError: If the file is missing, unreadable, or has an
            unsupported extension.

    """
    if not os.path.isfile(path):
        raise ConfigurationError(f"Config file {path} does not exist.")

    extension = os.path.splitext(path)[1].lower()
    try:
        if extension == ".toml":
            with open(path, "rb") as infile:
                data = tomllib.load(infile)
        elif extension == ".json":
            with open(path, encoding="utf-8") as infile:
                data = json.load(infile)
        else:
            raise ConfigurationError(
                f"Config file {path} must end with .toml or .json."
            )
    except (tomllib.TOMLDecodeError, json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ConfigurationError(f"Config file {path} is not valid: {e}") from e

    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {path} must hold a table/object.")
    return flatten_settings(data)
