import logging
from pathlib import Path
from typing import Type, TypeVar

from pydantic import BaseModel, ValidationError

from engines.parser_engines import parse_presentation
from exceptions import DataValidationException
from schemas.diagram_schemas import AlgebroidIn, AlphaIn, DiagramIn, FamilyIn
from schemas.presentation_schemas import Presentation

logger = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)


class InputRepository:

    def __init__(self, default_bound: int):
        self._default_bound = default_bound

    async def read_text(self, path: str) -> str:
        try:
            return Path(path).read_text(encoding="utf-8")
        except OSError as error:
            logger.error(f"Error while reading {path}. Details: {error}")
            raise DataValidationException(f"Cannot read input file {path}: {error.strerror}")

    async def get_presentation(self, path: str) -> Presentation:
        text = await self.read_text(path)
        return parse_presentation(text, self._default_bound)

    async def get_diagram(self, path: str) -> DiagramIn:
        return await self._get_model(path, DiagramIn)

    async def get_alpha(self, path: str) -> AlphaIn:
        return await self._get_model(path, AlphaIn)

    async def get_family(self, path: str) -> FamilyIn:
        return await self._get_model(path, FamilyIn)

    async def get_algebroid(self, path: str) -> AlgebroidIn:
        return await self._get_model(path, AlgebroidIn)

    async def _get_model(self, path: str, model: Type[Model]) -> Model:
        text = await self.read_text(path)
        try:
            return model.model_validate_json(text)
        except ValidationError as error:
            first = error.errors()[0]
            location = ".".join(str(part) for part in first["loc"])
            logger.error(f"Invalid {model.__name__} in {path}: {error.error_count()} errors")
            raise DataValidationException(f"{path}: {location}: {first['msg']}")
