"""JSON instance files and CSV/JSON report writers.

Instance file keys: ``opinions``, ``costs``, ``owa_weights``, ``epsilon``
(required); ``importance_weights``, ``delta``, ``gamma1``, ``gamma2`` and
``normalize_costs`` (optional).  Costs are only rescaled to sum to one when
``normalize_costs`` is true.
"""

import csv
import json
from pathlib import Path

from .exceptions import ValidationError
from .measures import Instance

REQUIRED_KEYS = ("opinions", "costs", "owa_weights", "epsilon")
OPTIONAL_KEYS = ("importance_weights", "delta", "gamma1", "gamma2", "normalize_costs")


def instance_from_dict(data, source="<dict>"):
    if not isinstance(data, dict):
        raise ValidationError(f"{source}: top level must be a JSON object")
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise ValidationError(f"{source}: missing field(s) {', '.join(missing)}")
    unknown = sorted(set(data) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
    if unknown:
        raise ValidationError(f"{source}: unknown field(s) {', '.join(unknown)}")
    normalize = data.get("normalize_costs", False)
    if not isinstance(normalize, bool):
        raise ValidationError(f"{source}: normalize_costs must be true or false")
    kw = {k: data[k] for k in ("importance_weights", "delta", "gamma1", "gamma2") if k in data}
    try:
        return Instance.create(
            data["opinions"], data["costs"], data["owa_weights"], data["epsilon"],
            normalize_costs=normalize, **kw,
        )
    except ValidationError as exc:
        raise ValidationError(f"{source}: {exc}") from None
    except TypeError as exc:
        raise ValidationError(f"{source}: malformed field ({exc})") from None


def load_instance(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return instance_from_dict(data, str(path))


def write_instance(instance, path):
    Path(path).write_text(json.dumps(instance.to_dict(), indent=2) + "\n")


def write_json(obj, path=None):
    text = json.dumps(obj, indent=2, default=_jsonable) + "\n"
    if path is None:
        return text
    Path(path).write_text(text)
    return text


def write_csv(rows, columns, path):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)


def _jsonable(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")
