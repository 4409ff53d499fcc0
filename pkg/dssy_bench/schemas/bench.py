from marshmallow import ValidationError, fields, validate, validates_schema

from .base import BaseSchema

PROBLEMS = ['poisson', 'stokes', 'elasticity']
MESHES = ['theta', 'random']
ELEMENTS = ['np', 'p']
FORMATS = ['csv', 'md']
DEFAULT_LEVELS = [4, 8, 16, 32, 64, 128]
DEFAULT_TIMING_LEVELS = [32, 64, 128, 256]


def _one_of(choices):
    return validate.OneOf(choices, error="Must be one of: {choices}.")


class MeshArgsSchema(BaseSchema):
    mesh = fields.Str(load_default='theta', validate=_one_of(MESHES))
    theta = fields.Float(
        load_default=0.7,
        validate=validate.Range(min=0, max=1, max_inclusive=False))
    alpha = fields.Float(
        load_default=0.25,
        validate=validate.Range(min=0, max=0.5, max_inclusive=False))
    seed = fields.Int(load_default=1, validate=validate.Range(min=0))
    n = fields.Int(
        load_default=16,
        validate=validate.Range(min=2, error="Need at least {min} cells per side."))
    out = fields.Str(load_default=None, allow_none=True)


class SolveArgsSchema(MeshArgsSchema):
    problem = fields.Str(load_default='poisson', validate=_one_of(PROBLEMS))
    element = fields.Str(load_default='np', validate=_one_of(ELEMENTS))
    ctilde = fields.Float(load_default=None, allow_none=True)
    l = fields.Int(load_default=1, validate=_one_of([1, 2]))  # noqa: E741
    mu = fields.Float(
        load_default=1.0, validate=validate.Range(min=0, min_inclusive=False))
    lam = fields.Float(
        data_key='lambda', load_default=1.0,
        validate=validate.Range(min=0))
    quad = fields.Int(
        load_default=None, allow_none=True,
        validate=validate.Range(min=1, max=10))
    tol = fields.Float(
        load_default=None, allow_none=True,
        validate=validate.Range(min=0, min_inclusive=False))
    format = fields.Str(load_default='csv', validate=_one_of(FORMATS))
    mesh_file = fields.Str(load_default=None, allow_none=True)

    @validates_schema
    def check_element(self, data, **kwargs):
        if data.get('element') == 'p' and data.get('problem') != 'poisson':
            raise ValidationError(
                "The parametric element is only available for poisson.",
                field_name='element')


class StudyArgsSchema(SolveArgsSchema):
    levels = fields.List(
        fields.Int(validate=validate.Range(min=2)),
        load_default=lambda: list(DEFAULT_LEVELS),
        validate=validate.Length(min=1))


class TimingArgsSchema(MeshArgsSchema):
    levels = fields.List(
        fields.Int(validate=validate.Range(min=2)),
        load_default=lambda: list(DEFAULT_TIMING_LEVELS),
        validate=validate.Length(min=1))
    repeats = fields.Int(
        load_default=None, allow_none=True,
        validate=validate.Range(min=3, error="Must be at least {min}."))
    ctilde = fields.Float(load_default=None, allow_none=True)
    format = fields.Str(load_default='csv', validate=_one_of(FORMATS))


class VerifyArgsSchema(BaseSchema):
    samples = fields.Int(
        load_default=None, allow_none=True, validate=validate.Range(min=1))
    seed = fields.Int(load_default=20240611, validate=validate.Range(min=0))
