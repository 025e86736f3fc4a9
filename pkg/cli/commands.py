from typing import Type

from pydantic import BaseModel

_IS_COMMAND = "is_command"


class Command(BaseModel):
    name: str
    description: str
    input_schema: Type[BaseModel]


def command(func):
    setattr(func, _IS_COMMAND, True)
    return func


def is_command(attr) -> bool:
    return hasattr(attr, _IS_COMMAND)


def command_name(method_name: str) -> str:
    """Method name to subcommand name: validate_rules -> validate-rules."""
    return method_name.replace("_", "-")
