try:
    import tomllib as toml
except ModuleNotFoundError:  # Python 3.10
    import tomli as toml

__all__ = ["toml"]
