# -*- coding: utf-8 -*-

"""
Shared interfaces, error types and verification reports.
"""
