"""Pydantic model for one command-line invocation, validated before any computation."""

from enum import Enum
from typing import Dict
from typing import FrozenSet
from typing import List
from typing import Literal
from typing import Optional

from pydantic import BaseModel
from pydantic import Field
from pydantic import ValidationError
from pydantic import model_validator

from src.errors import ConfigurationError
from src.models.hierarchy import Variant


class Command(str, Enum):
    """Command enumeration."""

    DIAGRAM = "diagram"
    HIERARCHY = "hierarchy"
    ANALYZE = "analyze"
    DISTMAT = "distmat"
    GENERATE = "generate"
    PERTURB = "perturb"


class OutputFormat(str, Enum):
    TSV = "tsv"
    DOT = "dot"
    JSON = "json"
    VTK = "vtk"


# First entry is the default.
FORMATS: Dict[Command, List[OutputFormat]] = {
    Command.DIAGRAM: [OutputFormat.TSV],
    Command.HIERARCHY: [OutputFormat.DOT, OutputFormat.JSON],
    Command.ANALYZE: [OutputFormat.TSV],
    Command.DISTMAT: [OutputFormat.TSV],
    Command.GENERATE: [OutputFormat.TSV, OutputFormat.VTK],
    Command.PERTURB: [OutputFormat.TSV],
}

SINGLE_FIELD: FrozenSet[Command] = frozenset(
    {Command.DIAGRAM, Command.HIERARCHY, Command.ANALYZE}
)


class RunConfig(BaseModel):
    """Flags of one invocation after defaults from the settings have been applied."""

    command: Command
    inputs: List[str] = Field(default_factory=list, description="Input file paths")
    synth: List[str] = Field(default_factory=list, description="Synthetic case names")
    series: Optional[str] = Field(
        None, description="Synthetic series as oscillate:<steps>:<period>"
    )
    mode: Literal["sublevel", "superlevel"] = "sublevel"
    variant: Variant = Variant.ISPH
    connectivity: Literal[4, 8] = 4
    measure: Literal["isph-ted", "wasserstein"] = "isph-ted"
    q: float = Field(2.0, ge=1.0, description="Wasserstein exponent")
    indel_factor: float = Field(1.0, gt=0.0, description="TED insert/delete factor")
    output: Optional[str] = Field(None, description="Output path; stdout if unset")
    format: Optional[OutputFormat] = None
    layout: Literal["dense", "triplets"] = "dense"
    resolution: str = "100x50"
    samples: int = Field(3, ge=0)
    seed: int = 20180901
    workers: int = Field(1, ge=1)

    @property
    def superlevel(self) -> bool:
        return self.mode == "superlevel"

    @property
    def source_count(self) -> int:
        return len(self.inputs) + len(self.synth)

    @model_validator(mode="after")
    def check_sources(self):
        """Validate the input flags make sense for the command."""
        if self.series and self.command is not Command.DISTMAT:
            raise ValueError("--series is only valid for distmat")
        if self.command in SINGLE_FIELD and self.source_count != 1:
            raise ValueError(
                f"{self.command.value} needs exactly one of --input or --synth"
            )
        if self.command is Command.DISTMAT:
            if self.series and self.source_count:
                raise ValueError("--series cannot be combined with --input or --synth")
            if not self.series and self.source_count < 2:
                raise ValueError("distmat needs --series or at least two fields")
        if self.command is Command.GENERATE and (self.inputs or len(self.synth) != 1):
            raise ValueError("generate needs exactly one --synth and no --input")
        if self.command is Command.PERTURB and self.source_count:
            raise ValueError("perturb takes no --input or --synth")
        return self

    @model_validator(mode="after")
    def check_format(self):
        """Validate the output format is one the command can write."""
        allowed = FORMATS[self.command]
        if self.format is None:
            # generate picks its format from the domain of the case
            if self.command is not Command.GENERATE:
                self.format = allowed[0]
        elif self.format not in allowed:
            names = ", ".join(f.value for f in allowed)
            raise ValueError(
                f"--format {self.format.value} is not valid for"
                f" {self.command.value}; expected one of: {names}"
            )
        return self


def build_run_config(**flags) -> RunConfig:
    """Validate flags into a RunConfig.

    Raises:
        ConfigurationError: if flags are missing, malformed or mutually exclusive.
    """
    try:
        return RunConfig.model_validate(flags)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid arguments: {e}") from e
