import sys

from app.cli import main

if __name__ == "__main__":
    """启动命令行"""
    sys.exit(main())
