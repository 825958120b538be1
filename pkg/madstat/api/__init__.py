"""
API Package

Route modules of the madstat HTTP API.
"""
