import hashlib
import json


def canonical_json(data):
    """
    Serialize ``data`` with sorted keys and no insignificant whitespace

    >>> canonical_json({"b": [1, 2.5], "a": None})
    '{"a":null,"b":[1,2.5]}'
    >>> canonical_json({"a": 1}) == canonical_json({"a": 1})
    True
    """
    return json.dumps(data, sort_keys=True, separators=(",", ":"), allow_nan=False)


def digest(data):
    """
    A stable fingerprint of a json compatible document

    >>> digest({"a": 1, "b": 2}) == digest({"b": 2, "a": 1})
    True
    >>> digest({"a": 1}).startswith("sha256:")
    True
    >>> len(digest([]))
    71
    """
    payload = canonical_json(data).encode("utf-8")
    return "sha256:%s" % hashlib.sha256(payload).hexdigest()
