"""Util functions and classes."""

# Copyright 2013-2018 The Home Assistant Authors
# https://github.com/home-assistant/home-assistant/blob/master/LICENSE.md


class Registry(dict):
    """Named verification checks, run in the order they are registered."""

    def register(self, name):
        """Return decorator to register a check under a unique name."""

        def decorator(func):
            """Register decorated function."""
            if name in self:
                raise ValueError(f"{name} is already registered")
            self[name] = func
            return func

        return decorator


def popcount(value):
    """Return the number of set bits of a non-negative integer."""
    return bin(value).count("1")


def parity(value):
    """Return the parity of the number of set bits."""
    return popcount(value) & 1
