"""Unit tests for the error hierarchy."""

import pytest

from meanfield_lab.errors import (
    ConfigError,
    DomainError,
    IntegrationQualityError,
    LabError,
    SizeLimitError,
    ValidationError,
)


class TestLabError:
    """Tests for messages, suggestions and details."""

    def test_str_includes_suggestion(self) -> None:
        error = DomainError("gamma out of range", suggestion="use 0 < gamma <= 1")

        assert str(error) == "gamma out of range (use 0 < gamma <= 1)"
        assert str(DomainError("plain")) == "plain"

    def test_to_dict(self) -> None:
        error = SizeLimitError("tensor", 5**6, 4096)

        assert error.to_dict() == {
            "error": "SizeLimitError",
            "message": "tensor of size 15625 exceeds cap 4096",
            "suggestion": "reduce N or M, or raise the cap explicitly",
            "details": {"what": "tensor", "size": 15625, "cap": 4096},
        }

    def test_integration_quality(self) -> None:
        error = IntegrationQualityError(2e-5, 1e-6, 0.1)

        assert error.suggestion == "reduce dt"
        assert error.details == {"drift": 2e-5, "tolerance": 1e-6, "dt": 0.1}

    def test_config_error_field(self) -> None:
        error = ConfigError("must be positive", field="run.dt")

        assert error.message == "run.dt: must be positive"
        assert error.field == "run.dt"
        assert ConfigError("broken").details is None

    @pytest.mark.parametrize("error_class", [DomainError, ValidationError, ConfigError])
    def test_hierarchy(self, error_class: type[LabError]) -> None:
        with pytest.raises(LabError):
            raise error_class("boom")
