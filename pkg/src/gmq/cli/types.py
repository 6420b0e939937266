"""Contains click parameter types shared by the commands."""

from __future__ import annotations

import click

AUTO = "auto"

TAU = click.FloatRange(0.0, 1.0, min_open=True, max_open=True)
POSITIVE = click.FloatRange(min=0.0, min_open=True)


class CommaSeparated(click.ParamType):
    """A comma separated list of values of another parameter type."""

    name = "list"

    def __init__(self, item_type: click.ParamType):
        """Initialize CommaSeparated."""
        self.item_type = item_type

    def convert(self, value, param, ctx):
        """Split value at commas and convert every item."""
        if isinstance(value, tuple):
            return value
        items = [item.strip() for item in str(value).split(",") if item.strip()]
        if not items:
            self.fail("Expected at least one value.", param, ctx)
        return tuple(self.item_type.convert(item, param, ctx) for item in items)


class AutoFloat(click.ParamType):
    """A nonnegative float or the word auto, converted to None."""

    name = "float|auto"

    def convert(self, value, param, ctx):
        """Convert to None for auto, else to a nonnegative float."""
        if value is None or value == AUTO:
            return None
        if isinstance(value, float):
            number = value
        else:
            try:
                number = float(value)
            except ValueError:
                self.fail(f"{value!r} is neither a number nor {AUTO!r}.", param, ctx)
        if not number >= 0.0:
            self.fail(f"{value!r} must be nonnegative.", param, ctx)
        return number
