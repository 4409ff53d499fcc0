from argparse import Namespace

import pytest

from dssy_bench.errors import BadParam
from dssy_bench.handlers import validate_schema
from dssy_bench.schemas import MeshArgsSchema


class DummyHandler:
    @validate_schema(MeshArgsSchema)
    def handle(self, request):
        return request.validated


class TestValidateSchema:
    def test_namespace(self):
        # Setup
        request = Namespace(command='mesh', config=None, n=8, theta=None)

        # Action
        validated = DummyHandler().handle(request)

        # Assert
        assert validated['n'] == 8
        assert validated['theta'] == 0.7
        assert request.validated is validated

    def test_dict(self):
        assert DummyHandler().handle({'n': 4})['n'] == 4

    def test_invalid_arguments(self):
        with pytest.raises(BadParam) as exc:
            DummyHandler().handle(Namespace(n=1))
        assert exc.value.exit_code == 2
        assert 'n' in exc.value.details['messages']
