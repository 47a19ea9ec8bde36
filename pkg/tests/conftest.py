import pytest


@pytest.fixture
def write_tree(tmp_path):
    """Materialize {relative_path: text} under tmp_path and return the root."""

    def _write(files: dict, root_name: str = "repo"):
        root = tmp_path / root_name
        for rel, text in files.items():
            target = root / rel
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding="utf-8")
        root.mkdir(parents=True, exist_ok=True)
        return root

    return _write
