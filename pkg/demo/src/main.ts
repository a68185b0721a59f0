import { initApp } from './app'
import type { UiConfig } from './types'

async function boot(): Promise<void> {
  const root = document.getElementById('app')
  if (!root) throw new Error('missing #app element')
  const res = await fetch('config.json')
  if (!res.ok) {
    root.textContent = `failed to load config.json (HTTP ${res.status})`
    return
  }
  const config = (await res.json()) as UiConfig
  initApp(root, config)
}

void boot()
