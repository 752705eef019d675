from ._version import version, version_tuple  # noqa: F401
