import logging
import os
from typing import Dict, Mapping, Optional

from pydantic import ValidationError

from models.data_models import VSystemDocument
from models.errors import ConfigError, VerificationError
from vee_systems.catalog import catalog
from vee_systems.vsystem import VSystem

logger = logging.getLogger(__name__)


class SystemResolver:
    """
    Turns the system argument of the command line into a VSystem.

    The argument is read as a JSON file when it names an existing file or ends
    in .json, and as a catalog name such as "A2", "G2(h=0)" or "AN(3)" otherwise.
    """

    def __init__(self, source: str, params: Optional[Mapping[str, str]] = None):
        self.source = source
        self.params: Dict[str, str] = dict(params or {})

    def file_exists(self) -> bool:
        return os.path.isfile(self.source)

    def looks_like_file(self) -> bool:
        return self.file_exists() or self.source.endswith(".json") or os.sep in self.source

    def read_file(self) -> str:
        try:
            with open(self.source, "r", encoding="utf-8") as f:
                return f.read()
        except OSError as exc:
            raise ConfigError(f"cannot read {self.source}: {exc.strerror or exc}") from exc

    def from_file(self) -> VSystem:
        try:
            document = VSystemDocument.model_validate_json(self.read_file())
        except ValidationError as exc:
            raise ConfigError(f"{self.source} is not a valid system document: {exc.error_count()} errors") from exc
        try:
            return VSystem.from_document(document)
        except VerificationError as exc:
            raise ConfigError(f"{self.source}: {exc}") from exc

    def run(self) -> VSystem:
        """
        Resolve the system.

        Raises:
            ConfigError: If a file cannot be read or does not hold a valid system
            CatalogError: If a catalog name or one of its parameters is unknown
        """
        if self.looks_like_file():
            system = self.from_file()
            logger.info("loaded %s from %s", system.name, self.source)
            return system
        if self.params and "(" in self.source:
            logger.debug("--param values override those written in %s", self.source)
        system = catalog(self.source, self.params)
        logger.info("resolved %s to %s with %d vectors", self.source, system.name, len(system))
        return system


def resolve_system(source: str, params: Optional[Mapping[str, str]] = None) -> VSystem:
    return SystemResolver(source, params).run()
