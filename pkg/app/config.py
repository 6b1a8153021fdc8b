from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Group budgets
    max_group_order: int = 20000

    # Ordinal budgets
    ordinal_max_depth: int = 8
    example_max_steps: int = 64

    # Logging Configuration
    log_level: str = "info"

    # Verification suite
    verify_seed: int = 1
    verify_trials: int = 100
    verify_workers: int = 1
    verify_max_degree: int = 6
    verify_max_order: int = 2000
    verify_max_tree_nodes: int = 40

    # HTTP surface
    api_host: str = "0.0.0.0"
    api_port: int = 8000

    class Config:
        env_file = ".env"
        case_sensitive = False


# Create settings instance
settings = Settings()
