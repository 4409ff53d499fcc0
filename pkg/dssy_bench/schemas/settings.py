from marshmallow import fields, validate

from .base import BaseSchema


class SettingsSchema(BaseSchema):
    """
    The ``dssy.*`` keys of the ``[app:dssy_bench]`` section.

    Values arrive as strings from the ini file; missing keys take the
    defaults below.
    """
    quad = fields.Int(
        data_key='dssy.quad', load_default=5,
        validate=validate.Range(min=1, max=10))
    error_quad = fields.Int(
        data_key='dssy.error_quad', load_default=6,
        validate=validate.Range(min=1, max=10))
    tol = fields.Float(
        data_key='dssy.tol', load_default=1e-12,
        validate=validate.Range(min=0, min_inclusive=False))
    saddle_tol = fields.Float(
        data_key='dssy.saddle_tol', load_default=1e-10,
        validate=validate.Range(min=0, min_inclusive=False))
    # 0 picks max(5000, 10 n)
    maxit = fields.Int(
        data_key='dssy.maxit', load_default=0,
        validate=validate.Range(min=0))
    ctilde = fields.Float(data_key='dssy.ctilde', load_default=0.0)
    timing_repeats = fields.Int(
        data_key='dssy.timing_repeats', load_default=3,
        validate=validate.Range(min=3, error="Must be at least {min}."))
    verify_samples = fields.Int(
        data_key='dssy.verify_samples', load_default=1000,
        validate=validate.Range(min=1))
