from argparse import Namespace
from functools import wraps


def _arguments(request) -> dict:
    data = vars(request) if isinstance(request, Namespace) else dict(request)
    # unset flags fall back to the schema defaults
    return {key: value for key, value in data.items() if value is not None}


def validate_schema(schema_class):
    """
    A decorator to validate command line arguments against a Marshmallow
    schema before the handler runs. The loaded data is stored on
    ``request.validated``.

    :raises BadParam: with the schema's field messages
    """
    def decorator(wrapped_handler):
        @wraps(wrapped_handler)
        def wrapper(handler, request, *args, **kwargs):
            validated = schema_class().load_or_raise(_arguments(request))
            if isinstance(request, Namespace):
                request.validated = validated
            else:
                request = Namespace(**request, validated=validated)
            return wrapped_handler(handler, request, *args, **kwargs)
        return wrapper
    return decorator
