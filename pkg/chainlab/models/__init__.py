"""Pydantic models for chainlab reports and inputs."""
