"""Base data model."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any, ClassVar, Optional, TypeVar

from pydantic.v1 import BaseModel

from ignifront.utils import is_debug, serialize_value

if TYPE_CHECKING:
    from pydantic.v1.typing import SetStr
    from typing_extensions import Self  # requires Python 3.11+


FrontObject = TypeVar("FrontObject", bound="FrontBaseObject")
_LOGGER = logging.getLogger(__name__)


class FrontBaseObject(BaseModel):
    """Base class for all immutable ignifront data objects.

    * Instances are frozen (and hashable when every field is hashable)
    * `.from_values` skips validation unless debug mode is on, for objects the solvers build in hot loops
    * `.summary_dict` converts the object into a JSON-ready dict
    """

    _summary_exclude: ClassVar[Optional[SetStr]] = None

    class Config:
        arbitrary_types_allowed = True
        frozen = True
        copy_on_model_validation = "none"

    @classmethod
    def from_values(cls, **data: Any) -> Self:
        """Builds the object, fully validated only in debug mode."""

        if is_debug():
            return cls(**data)
        return cls.construct(**data)

    def summary_dict(self, exclude: Optional[SetStr] = None) -> dict[str, Any]:
        """Converts the object into a JSON-ready dict."""

        excluded = set(self._summary_exclude or ())
        if exclude is not None:
            excluded |= exclude

        data: dict[str, Any] = {}
        for key in self.__fields__:
            if key in excluded:
                continue
            data[key] = serialize_value(getattr(self, key))
        return data
