from .base import BaseSchema, format_messages
from .settings import SettingsSchema
from .bench import (
    MeshArgsSchema,
    SolveArgsSchema,
    StudyArgsSchema,
    TimingArgsSchema,
    VerifyArgsSchema,
)
