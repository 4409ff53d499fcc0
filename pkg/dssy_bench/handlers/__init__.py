from .decorators import validate_schema
from .bench import BenchHandler
