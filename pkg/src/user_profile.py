import tomllib
from copy import deepcopy
from pathlib import Path
from typing import NoReturn, TypedDict, cast, override
from warnings import deprecated

import tomli_w
from pathvalidate import ValidationError, validate_filepath

import error_messages
from utils import debug_log


class RunProfileDict(TypedDict):
    tol: float
    samples: int
    q_list: list[float]
    output_format: str
    series_order: int
    subdivision_limit: int
    max_doublings: int

    @override
    @deprecated("Use `copy.deepcopy` instead")
    def copy() -> NoReturn:
        return super().copy()  # pyright: ignore[reportGeneralTypeIssues]


DEFAULT_PROFILE = RunProfileDict(
    tol=1e-9,
    samples=1000,
    q_list=[10.0, 100.0, 1000.0, 10000.0],
    output_format="csv",
    series_order=12,
    subdivision_limit=10_000,
    max_doublings=6,
)

OUTPUT_FORMATS = ("csv", "json")


def __validated(profile: RunProfileDict, path: str):
    checks = (
        ("tol", profile["tol"] > 0, "tol > 0"),
        ("samples", profile["samples"] >= 1, "samples >= 1"),
        ("q_list", bool(profile["q_list"]) and all(q > 1 for q in profile["q_list"]), "values > 1"),
        ("output_format", profile["output_format"] in OUTPUT_FORMATS, " or ".join(OUTPUT_FORMATS)),
        ("series_order", profile["series_order"] >= 2, "series_order >= 2"),
        ("subdivision_limit", profile["subdivision_limit"] >= 1, "subdivision_limit >= 1"),
        ("max_doublings", profile["max_doublings"] >= 0, "max_doublings >= 0"),
    )
    for key, valid, constraint in checks:
        if not valid:
            reason = f"{key} must satisfy {constraint}, got {profile[key]!r}."
            raise error_messages.invalid_profile(path, reason)
    return profile


def __checked_path(path: str):
    try:
        validate_filepath(path, platform="auto")
    except ValidationError as exception:
        raise error_messages.invalid_profile(path, str(exception)) from exception
    return Path(path)


def load_profile(path: str = ""):
    """@return: The defaults, overridden by the values of the TOML file at `path` when given."""
    if not path:
        return deepcopy(DEFAULT_PROFILE)

    profile_path = __checked_path(path)
    try:
        with profile_path.open(mode="rb") as file:
            # Fallback to the defaults for anything the file leaves out
            loaded = DEFAULT_PROFILE | cast(RunProfileDict, tomllib.load(file))
    except (FileNotFoundError, IsADirectoryError, PermissionError, tomllib.TOMLDecodeError) as exception:
        raise error_messages.invalid_profile(path, str(exception)) from exception

    unknown = set(loaded) - set(DEFAULT_PROFILE)
    if unknown:
        raise error_messages.invalid_profile(path, "Unknown key(s): " + ", ".join(sorted(unknown)))

    try:
        profile = RunProfileDict(
            tol=float(loaded["tol"]),
            samples=int(loaded["samples"]),
            q_list=[float(q) for q in loaded["q_list"]],
            output_format=str(loaded["output_format"]),
            series_order=int(loaded["series_order"]),
            subdivision_limit=int(loaded["subdivision_limit"]),
            max_doublings=int(loaded["max_doublings"]),
        )
    except (TypeError, ValueError) as exception:
        raise error_messages.invalid_profile(path, str(exception)) from exception

    debug_log(f"Loaded run profile {path!r}: {profile}")
    return __validated(profile, path)


def save_profile(profile: RunProfileDict, path: str):
    """@return: The path the profile was written to."""
    profile_path = __checked_path(path)
    with profile_path.open("wb") as file:
        tomli_w.dump(dict(profile), file)
    debug_log(f"Saved run profile to {path!r}")
    return str(profile_path)
