import json

import pytest
from faker import Faker

fake = Faker()
Faker.seed(0)


@pytest.fixture(scope="function")
def write_input(tmp_path):
    def write(name: str, content) -> str:
        path = tmp_path / name
        text = content if isinstance(content, str) else json.dumps(content)
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture(scope="function")
def diagram_label():
    return fake.slug()
