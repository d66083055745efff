"""
Holder for secret values with explicit destruction, and the byte-scan oracle
used to check that destroyed secrets are really gone from actor state.
"""

from typing import Any, Generic, Iterable, List, Optional, TypeVar

from errors import SecretDestroyedError

T = TypeVar("T")


class Secret(Generic[T]):
    """
    Wraps s, t, r, k or tau.

    ``destroy()`` drops the reference; any later ``reveal()`` raises. Python
    cannot zero immutable ints, so destruction means no reachable copy remains
    in actor state, which ``dump_state()`` scans verify.
    """

    __slots__ = ("label", "_value", "_destroyed")

    def __init__(self, value: T, label: str = "secret"):
        self.label = label
        self._value: Optional[T] = value
        self._destroyed = False

    def reveal(self) -> T:
        if self._destroyed:
            raise SecretDestroyedError(f"{self.label} has been destroyed")
        return self._value

    def destroy(self) -> None:
        self._value = None
        self._destroyed = True

    @property
    def destroyed(self) -> bool:
        return self._destroyed

    def dump(self) -> Any:
        """Instrumentation only: raw value for state dumps (None once destroyed)."""
        return None if self._destroyed else self._value

    def __repr__(self) -> str:
        state = "destroyed" if self._destroyed else "redacted"
        return f"Secret({self.label}, <{state}>)"


def value_representations(value: Any, widths: Iterable[int] = ()) -> List[str]:
    """Textual forms under which a secret could show up in a dump."""
    if isinstance(value, (bytes, bytearray)):
        return [bytes(value).hex()]
    if isinstance(value, str):
        return [value]
    forms = {str(value), format(value, "x")}
    for width in widths:
        if value < 1 << (8 * width):
            forms.add(value.to_bytes(width, "big").hex())
    return sorted(forms)


def scan_for_values(text: str, values: Iterable[Any], widths: Iterable[int] = ()) -> List[Any]:
    """
    Return the values whose decimal, hex or fixed-width hex form occurs in text.

    Meaningful only for large values; in a toy group every small number occurs.
    """
    text = text.lower()
    widths = list(widths)
    return [
        value for value in values
        if any(form.lower() in text for form in value_representations(value, widths))
    ]
