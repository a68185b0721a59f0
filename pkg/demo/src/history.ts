import type { Turn } from './types'

const STORAGE_KEY = 'voxsync-demo-history'

export function loadHistory(storage: Storage): Turn[] {
  try {
    const raw = storage.getItem(STORAGE_KEY)
    if (!raw) return []
    const parsed = JSON.parse(raw)
    return Array.isArray(parsed) ? (parsed as Turn[]) : []
  } catch {
    return []
  }
}

export function saveHistory(storage: Storage, turns: Turn[]): void {
  try {
    storage.setItem(STORAGE_KEY, JSON.stringify(turns))
  } catch {
    // storage full or unavailable; history just won't survive reload
  }
}
