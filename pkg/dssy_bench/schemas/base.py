from marshmallow import EXCLUDE, Schema, ValidationError

from dssy_bench.errors import BadParam


def format_messages(messages) -> str:
    """Flatten marshmallow's {field: [messages]} into one line."""
    if isinstance(messages, dict):
        return '; '.join(
            f"{field}: {format_messages(value)}"
            for field, value in sorted(messages.items(), key=str))
    if isinstance(messages, (list, tuple)):
        return ' '.join(format_messages(value) for value in messages)
    return str(messages)


class BaseSchema(Schema):
    error_messages = {
        "unknown": "Unknown field.",
        "type": "Invalid input type.",
    }

    class Meta:
        unknown = EXCLUDE

    def load_or_raise(self, data, **kwargs):
        """``load`` that reports validation failures as BadParam."""
        try:
            return self.load(data, **kwargs)
        except ValidationError as err:
            raise BadParam(format_messages(err.messages),
                           messages=err.messages) from err
